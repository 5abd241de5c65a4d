//! Koszul homology, top local cohomology and truncated Koszul limits.
//!
//! Every computation runs on the standard-monomial basis of `A[δ,δ′]`, split
//! into weight slices before any rank is taken. Ranks use fraction-free
//! integer elimination.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hilbert::{chi, hilbert_dp, hilbert_function, Refine};
use crate::interval::{reg_alt, Interval};
use crate::linalg::{rank_fraction_free, Echelon, SparseVec};
use crate::partition::{IdealDescriptor, IdealKind};
use crate::poset::{self, Vertex};
use crate::series::{GradedSeries, SeriesKey};
use crate::straighten::{standard_monomials, NormalForm, StraighteningTable};
use crate::weight::Weight;

/// A linear combination of monomials (sorted index vectors).
pub type Combination = BTreeMap<Vec<usize>, BigRational>;

/// Largest interval accepted by the Koszul computations (subsets are bitmasks).
pub const MAX_KOSZUL_VERTICES: usize = 24;

/// Default bound on the total dimension of a Koszul complex.
pub const DEFAULT_BETTI_BUDGET: usize = 4_000_000;

/// Default bound on the dimension of one truncated Koszul limit complex.
pub const DEFAULT_SLICE_BUDGET: usize = 200_000;

/// A basis of standard monomials with its reverse index.
#[derive(Clone, Debug, Default)]
pub struct Basis {
    pub monomials: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl Basis {
    pub fn new(monomials: Vec<Vec<usize>>) -> Basis {
        let index = monomials.iter().enumerate().map(|(k, m)| (m.clone(), k)).collect();
        Basis { monomials, index }
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn position(&self, m: &[usize]) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Coordinates of a combination of basis monomials.
    pub fn coordinates(&self, v: &Combination) -> Result<SparseVec> {
        v.iter()
            .map(|(m, c)| {
                self.position(m)
                    .map(|k| (k, c.clone()))
                    .ok_or_else(|| Error::Unsupported(format!("monomial {m:?} outside the target basis")))
            })
            .collect()
    }
}

/// The standard-monomial model of an interval algebra with cached bases.
pub struct AlgebraModel {
    pub interval: Interval,
    elements: Vec<Vertex>,
    /// `above[a]`: indices `b` with `λ^a ≤ λ^b`, including `a`.
    above: Vec<Vec<usize>>,
    /// Smallest and largest level among `above[a]`.
    level_bounds: Vec<(i64, i64)>,
    nf: NormalForm,
    degree_bases: HashMap<usize, Basis>,
    slice_bases: HashMap<(i64, i64), Basis>,
}

impl AlgebraModel {
    pub fn new(i: &Interval) -> Result<AlgebraModel> {
        let table = StraighteningTable::new(i)?;
        let nf = NormalForm::new(&table);
        let elements = nf.elements.clone();
        let n = elements.len();
        let above: Vec<Vec<usize>> =
            (0..n).map(|a| (a..n).filter(|&b| poset::leq(elements[a], elements[b])).collect()).collect();
        let level_bounds = above
            .iter()
            .map(|bs| {
                let ls = bs.iter().map(|&b| elements[b].level_u());
                (ls.clone().min().unwrap_or(0), ls.max().unwrap_or(0))
            })
            .collect();
        Ok(AlgebraModel {
            interval: i.clone(),
            elements,
            above,
            level_bounds,
            nf,
            degree_bases: HashMap::new(),
            slice_bases: HashMap::new(),
        })
    }

    pub fn elements(&self) -> &[Vertex] {
        &self.elements
    }

    pub fn index_of(&self, v: Vertex) -> Option<usize> {
        self.elements.iter().position(|w| *w == v)
    }

    /// Standard monomials of degree `d`.
    pub fn degree_basis(&mut self, d: usize) -> &Basis {
        let elems = &self.elements;
        self.degree_bases.entry(d).or_insert_with(|| Basis::new(standard_monomials(elems, d)))
    }

    /// Standard monomials of `t`-degree `t` and `q`-degree `u`.
    pub fn slice_basis(&mut self, t: i64, u: i64) -> &Basis {
        if !self.slice_bases.contains_key(&(t, u)) {
            let b = Basis::new(self.chains_with_level(t, u));
            self.slice_bases.insert((t, u), b);
        }
        &self.slice_bases[&(t, u)]
    }

    fn chains_with_level(&self, t: i64, u: i64) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        if t < 0 {
            return out;
        }
        if t == 0 {
            if u == 0 {
                out.push(Vec::new());
            }
            return out;
        }
        let mut cur = Vec::with_capacity(t as usize);
        for a in 0..self.elements.len() {
            self.extend_chain(a, t, u, &mut cur, &mut out);
        }
        out
    }

    /// Extend chains whose next element is `a`, with `rem` elements still to
    /// place (including `a`) and level sum `u_rem` still to reach.
    fn extend_chain(&self, a: usize, rem: i64, u_rem: i64, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let (lo, hi) = self.level_bounds[a];
        if u_rem < rem * lo || u_rem > rem * hi {
            return;
        }
        cur.push(a);
        let u_next = u_rem - self.elements[a].level_u();
        if rem == 1 {
            if u_next == 0 {
                out.push(cur.clone());
            }
        } else {
            for &b in &self.above[a] {
                self.extend_chain(b, rem - 1, u_next, cur, out);
            }
        }
        cur.pop();
    }

    pub fn monomial_weight(&self, m: &[usize]) -> Weight {
        m.iter().map(|&k| self.elements[k].weight()).sum()
    }

    /// `λ^g · m` in normal form.
    pub fn times_generator(&mut self, m: &[usize], g: usize) -> Combination {
        self.nf.times_generator(m, g)
    }

    /// `ℓ^n · m` in normal form for a linear form `ℓ = Σ c_g λ^g`.
    pub fn times_form_power(&mut self, m: &[usize], form: &[(usize, BigRational)], n: u32) -> Combination {
        let mut cur: Combination = BTreeMap::from([(m.to_vec(), BigRational::one())]);
        for _ in 0..n {
            let mut next: Combination = BTreeMap::new();
            for (mono, c) in &cur {
                for (g, cg) in form {
                    for (y, cy) in self.nf.times_generator(mono, *g) {
                        let e = next.entry(y).or_insert_with(BigRational::zero);
                        *e += c * cg * cy;
                    }
                }
            }
            next.retain(|_, c| !c.is_zero());
            cur = next;
        }
        cur
    }
}

/// One graded piece `A_d` with the multiplication maps `λ^α: A_d → A_{d+1}`.
#[derive(Clone, Debug)]
pub struct GradedComponentModel {
    pub interval: Interval,
    pub degree: usize,
    pub basis: Vec<Vec<usize>>,
    pub target: Vec<Vec<usize>>,
    /// `tables[α][k]` is `λ^α · basis[k]` in coordinates of `target`.
    pub tables: Vec<Vec<SparseVec>>,
}

impl GradedComponentModel {
    pub fn new(model: &mut AlgebraModel, d: usize) -> Result<GradedComponentModel> {
        let basis = model.degree_basis(d).monomials.clone();
        let target = model.degree_basis(d + 1).clone();
        let n = model.elements().len();
        let mut tables = Vec::with_capacity(n);
        for g in 0..n {
            let mut col = Vec::with_capacity(basis.len());
            for m in &basis {
                let prod = model.times_generator(m, g);
                col.push(target.coordinates(&prod)?);
            }
            tables.push(col);
        }
        Ok(GradedComponentModel { interval: model.interval.clone(), degree: d, basis, target: target.monomials, tables })
    }

    /// Apply `λ^α` to a vector of `A_d`.
    pub fn apply(&self, alpha: usize, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (k, c) in v {
            crate::linalg::axpy(&mut out, c, &self.tables[alpha][*k]);
        }
        out
    }

    /// Whether `λ^β λ^α = λ^α λ^β` as maps `A_d → A_{d+2}`; `next` is the
    /// model of degree `d + 1`.
    pub fn commutes_with(&self, next: &GradedComponentModel, alpha: usize, beta: usize) -> bool {
        (0..self.basis.len()).all(|k| {
            let ab = next.apply(beta, &self.tables[alpha][k]);
            let ba = next.apply(alpha, &self.tables[beta][k]);
            ab == ba
        })
    }
}

/// How a Betti table was computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BettiMethod {
    /// Ranks of the Koszul differentials on `A_j ⊗ Λ^i`, sliced by the full weight.
    Direct,
    /// Koszul complex of the complementary variables on `A/(Reg)`, after
    /// checking that `Reg` is a regular sequence.
    ArtinianReduction,
}

/// One nonzero Betti number `b_{i,j}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BettiEntry {
    pub i: usize,
    pub j: i64,
    pub b: u64,
}

/// Betti numbers `b_{i,j} = dim Tor_i^P(A, C)_j`, complete for `j ≤ j_max`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiTable {
    pub interval: String,
    pub j_max: i64,
    pub method: BettiMethod,
    /// Nonzero entries sorted by `(i, j)`.
    pub entries: Vec<BettiEntry>,
}

impl BettiTable {
    fn from_map(i: &Interval, j_max: i64, method: BettiMethod, map: BTreeMap<(usize, i64), u64>) -> BettiTable {
        let entries = map.into_iter().filter(|(_, b)| *b > 0).map(|((i, j), b)| BettiEntry { i, j, b }).collect();
        BettiTable { interval: i.to_string(), j_max, method, entries }
    }

    pub fn get(&self, i: usize, j: i64) -> u64 {
        self.entries.iter().find(|e| e.i == i && e.j == j).map_or(0, |e| e.b)
    }

    /// The largest homological degree with a nonzero entry, and the largest
    /// internal degree in that row.
    pub fn top(&self) -> Option<(usize, i64)> {
        let c = self.entries.iter().map(|e| e.i).max()?;
        let p = self.entries.iter().filter(|e| e.i == c).map(|e| e.j).max()?;
        Some((c, p))
    }

    /// `Σ_i (−1)^i b_{i,j}` for `j = 0..=j_max`.
    pub fn euler_characteristic(&self) -> Vec<i64> {
        let mut v = vec![0i64; (self.j_max + 1).max(0) as usize];
        for e in &self.entries {
            if e.j <= self.j_max {
                let s = if e.i % 2 == 0 { 1 } else { -1 };
                v[e.j as usize] += s * e.b as i64;
            }
        }
        v
    }

    /// Whether `b_{i,j} = b_{c−i, p−j}` with `(c, p)` the top corner.
    pub fn is_symmetric(&self) -> bool {
        let Some((c, p)) = self.top() else { return true };
        self.entries.iter().all(|e| e.i <= c && self.get(c - e.i, p - e.j) == e.b)
    }

    /// Whether two tables agree in every internal degree `≤ j`.
    pub fn agrees_through(&self, other: &BettiTable, j: i64) -> bool {
        let cut = |t: &BettiTable| t.entries.iter().filter(|e| e.j <= j).copied().collect::<Vec<_>>();
        cut(self) == cut(other)
    }
}

/// `(1 − t)^{|interval|} · A(t)` through `t^{j_max}`: the Euler characteristic
/// every Koszul Betti table must reproduce.
pub fn koszul_euler_oracle(elems: &[Vertex], j_max: i64) -> Vec<i64> {
    let j = j_max.max(0) as usize;
    let mut h: Vec<i64> = hilbert_function(elems, j).iter().map(|c| c.to_i64().expect("small dimension")).collect();
    for _ in 0..elems.len() {
        for k in (1..h.len()).rev() {
            h[k] -= h[k - 1];
        }
    }
    h
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

fn sign_below(mask: u32, k: usize) -> BigRational {
    if (mask & ((1u32 << k) - 1)).count_ones().is_multiple_of(2) {
        BigRational::one()
    } else {
        -BigRational::one()
    }
}

/// Koszul homology Betti numbers `b_{i,j}` for `j ≤ j_max` by exact ranks
/// on weight slices of `A_{j−i} ⊗ Λ^i`.
pub fn koszul_betti(i: &Interval, j_max: i64) -> Result<BettiTable> {
    koszul_betti_with_budget(i, j_max, DEFAULT_BETTI_BUDGET)
}

/// [`koszul_betti`] with an explicit bound on the total complex dimension.
pub fn koszul_betti_with_budget(i: &Interval, j_max: i64, budget: usize) -> Result<BettiTable> {
    let n = i.len();
    if n > MAX_KOSZUL_VERTICES {
        return Err(Error::BudgetExceeded(format!("{i} has {n} vertices, above {MAX_KOSZUL_VERTICES}")));
    }
    let j_top = j_max.max(0) as usize;
    let hf = hilbert_function(i.elements(), j_top);
    let mut total = 0usize;
    for j in 0..=j_top {
        for k in 0..=j.min(n) {
            let a = hf[j - k].to_usize().unwrap_or(usize::MAX);
            total = total.saturating_add(a.saturating_mul(binomial(n, k)));
        }
    }
    if total > budget {
        return Err(Error::BudgetExceeded(format!("Koszul complex of {i} through degree {j_max} has dimension {total}")));
    }
    let mut model = AlgebraModel::new(i)?;
    let bases: Vec<Basis> = (0..=j_top).map(|d| model.degree_basis(d).clone()).collect();
    let weights: Vec<Vec<Weight>> =
        bases.iter().map(|b| b.monomials.iter().map(|m| model.monomial_weight(m)).collect()).collect();
    // mult[d][k][g] = λ^g · basis_d[k] in coordinates of basis_{d+1}
    let mut mult: Vec<Vec<Vec<SparseVec>>> = Vec::with_capacity(j_top);
    for d in 0..j_top {
        let mut table = Vec::with_capacity(bases[d].len());
        for m in &bases[d].monomials {
            let mut row = Vec::with_capacity(n);
            for g in 0..n {
                let prod = model.times_generator(m, g);
                row.push(bases[d + 1].coordinates(&prod)?);
            }
            table.push(row);
        }
        mult.push(table);
    }
    let mut subsets: Vec<Vec<(u32, Weight)>> = vec![Vec::new(); n + 1];
    for mask in 0u32..(1u32 << n) {
        let w: Weight = (0..n).filter(|k| mask >> k & 1 == 1).map(|k| i.elements()[k].weight()).sum();
        subsets[mask.count_ones() as usize].push((mask, w));
    }
    let mut table: BTreeMap<(usize, i64), u64> = BTreeMap::new();
    for j in 0..=j_top {
        let top = j.min(n);
        let mut buckets: HashMap<Weight, Vec<Vec<(u32, u32)>>> = HashMap::new();
        for k in 0..=top {
            let d = j - k;
            for (mi, wm) in weights[d].iter().enumerate() {
                for (mask, ws) in &subsets[k] {
                    buckets.entry(*wm + *ws).or_insert_with(|| vec![Vec::new(); top + 1])[k].push((mi as u32, *mask));
                }
            }
        }
        let cells: Vec<Vec<Vec<(u32, u32)>>> = buckets.into_values().collect();
        let slices: Vec<Vec<u64>> = cells.par_iter().map(|c| slice_betti(c, j, &mult)).collect();
        for s in slices {
            for (k, b) in s.into_iter().enumerate() {
                if b > 0 {
                    *table.entry((k, j as i64)).or_insert(0) += b;
                }
            }
        }
    }
    Ok(BettiTable::from_map(i, j_max, BettiMethod::Direct, table))
}

/// Homology dimensions of one weight slice of the Koszul complex in internal degree `j`.
fn slice_betti(cells: &[Vec<(u32, u32)>], j: usize, mult: &[Vec<Vec<SparseVec>>]) -> Vec<u64> {
    let top = cells.len() - 1;
    let mut ranks = vec![0usize; top + 2];
    for k in 1..=top {
        if cells[k].is_empty() || cells[k - 1].is_empty() {
            continue;
        }
        let col: HashMap<(u32, u32), usize> = cells[k - 1].iter().enumerate().map(|(c, key)| (*key, c)).collect();
        let d = j - k;
        let rows: Vec<SparseVec> = cells[k]
            .iter()
            .map(|&(mi, mask)| {
                let mut row = SparseVec::new();
                for s in 0..32 {
                    if mask >> s & 1 == 0 {
                        continue;
                    }
                    let sign = sign_below(mask, s);
                    for (k2, c) in &mult[d][mi as usize][s] {
                        let target = col[&(*k2 as u32, mask & !(1u32 << s))];
                        let e = row.entry(target).or_insert_with(BigRational::zero);
                        *e += &sign * c;
                        if e.is_zero() {
                            row.remove(&target);
                        }
                    }
                }
                row
            })
            .collect();
        ranks[k] = rank_fraction_free(&rows);
    }
    (0..=top).map(|k| (cells[k].len() - ranks[k] - ranks[k + 1]) as u64).collect()
}

/// The full Betti table through the Artinian reduction `A → A/(Reg)`.
///
/// `Reg` (one form per ρ-value) is checked to be a regular sequence by
/// comparing `dim (A/(Reg))_d` with the coefficients of `(1 − t)^{rank+1} A(t)`.
/// The remaining variables, one per doubled ρ-value, then give
/// `Tor^P(A, C) = Tor^{C[y]}(A/(Reg), C)`.
pub fn koszul_betti_artinian(i: &Interval) -> Result<BettiTable> {
    let n = i.len();
    if n > MAX_KOSZUL_VERTICES {
        return Err(Error::BudgetExceeded(format!("{i} has {n} vertices, above {MAX_KOSZUL_VERTICES}")));
    }
    let mut model = AlgebraModel::new(i)?;
    let ra = reg_alt(i.elements());
    let reg: Vec<Vec<(usize, BigRational)>> = ra
        .reg
        .iter()
        .map(|f| f.iter().map(|(v, c)| (model.index_of(*v).expect("vertex of the interval"), BigRational::from_integer((*c).into()))).collect())
        .collect();
    let c = reg.len();
    // h-vector: (1 − t)^c · A(t)
    let hf = hilbert_function(i.elements(), n + 2);
    let mut h: Vec<i64> = hf.iter().map(|x| x.to_i64().expect("small dimension")).collect();
    for _ in 0..c {
        for k in (1..h.len()).rev() {
            h[k] -= h[k - 1];
        }
    }
    let s = h.iter().rposition(|x| *x != 0).unwrap_or(0);
    if s > n {
        return Err(Error::Reconstruction(format!("{i}: h-vector does not terminate")));
    }
    // quotient bases (A/(Reg))_d as non-pivot columns of the image of Reg · A_{d−1}
    let mut echelons: Vec<Echelon> = Vec::new();
    let mut quotient_cols: Vec<Vec<usize>> = Vec::new();
    for d in 0..=s + 1 {
        let mut e = Echelon::new();
        if d > 0 {
            let prev = model.degree_basis(d - 1).monomials.clone();
            let cur = model.degree_basis(d).clone();
            for m in &prev {
                for f in &reg {
                    let prod = model.times_form_power(m, f, 1);
                    e.insert(cur.coordinates(&prod)?);
                }
            }
        }
        let dim_d = model.degree_basis(d).len();
        let pivots: BTreeSet<usize> = e.pivots().copied().collect();
        let cols: Vec<usize> = (0..dim_d).filter(|k| !pivots.contains(k)).collect();
        let expected = if d <= s { h[d] } else { 0 };
        if cols.len() as i64 != expected {
            return Err(Error::Unsupported(format!(
                "{i}: Reg is not a regular sequence (dim of the quotient in degree {d} is {}, h-vector gives {expected})",
                cols.len()
            )));
        }
        echelons.push(e);
        quotient_cols.push(cols);
    }
    // complementary variables: all but the first vertex of each ρ-value
    let mut by_rho: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for (k, v) in model.elements().iter().enumerate() {
        by_rho.entry(v.rho()).or_default().push(k);
    }
    let ys: Vec<usize> = by_rho.values().flat_map(|g| g.iter().skip(1).copied()).collect();
    let m = ys.len();
    // action of y on the quotient: ybar[d][k][y] in quotient coordinates of degree d+1
    let mut ybar: Vec<Vec<Vec<SparseVec>>> = Vec::new();
    for d in 0..=s {
        let cur = model.degree_basis(d).monomials.clone();
        let next = model.degree_basis(d + 1).clone();
        let pos: HashMap<usize, usize> = quotient_cols[d + 1].iter().enumerate().map(|(a, b)| (*b, a)).collect();
        let mut table = Vec::new();
        for &col in &quotient_cols[d] {
            let mut row = Vec::new();
            for &y in &ys {
                let prod = model.times_generator(&cur[col], y);
                let r = echelons[d + 1].reduce(next.coordinates(&prod)?);
                row.push(r.into_iter().map(|(k, c)| (pos[&k], c)).collect::<SparseVec>());
            }
            table.push(row);
        }
        ybar.push(table);
    }
    let qdim: Vec<usize> = quotient_cols.iter().map(|c| c.len()).collect();
    let j_max = (s + m) as i64;
    let mut table: BTreeMap<(usize, i64), u64> = BTreeMap::new();
    for j in 0..=s + m {
        let top = j.min(m);
        let mut cells: Vec<Vec<(u32, u32)>> = vec![Vec::new(); top + 1];
        for (k, cell) in cells.iter_mut().enumerate() {
            let d = j - k;
            if d > s {
                continue;
            }
            for mask in 0u32..(1u32 << m) {
                if mask.count_ones() as usize == k {
                    for q in 0..qdim[d] {
                        cell.push((q as u32, mask));
                    }
                }
            }
        }
        for (k, b) in slice_betti(&cells, j, &ybar).into_iter().enumerate() {
            if b > 0 {
                table.insert((k, j as i64), b);
            }
        }
    }
    Ok(BettiTable::from_map(i, j_max, BettiMethod::ArtinianReduction, table))
}

/// Whether the symmetry of a complete Betti table matches the Gorenstein property.
pub fn duality_check(bt: &BettiTable, gorenstein: bool) -> bool {
    bt.is_symmetric() == gorenstein
}

/// The character of `H_m^{rank+1}(A)` through `depth` graded pieces:
/// `Σ_j A_j^*` placed at weight `χ^{−1}` times the dual weights, so the
/// lowest component sits at `t^{−a}`.
pub fn top_local_cohomology_character(i: &Interval, depth: i64) -> Result<GradedSeries> {
    if !i.is_gorenstein() {
        return Err(Error::NotGorenstein(i.to_string()));
    }
    let x = chi(i)?;
    let a = hilbert_dp(i, depth, Refine::TQZ);
    let mut out = GradedSeries::zero(-x.a);
    for (k, c) in a.coeffs() {
        let mut z = [0i64; 5];
        for (slot, (xr, kr)) in z.iter_mut().zip(x.r.iter().zip(k.z)) {
            *slot = -xr - kr;
        }
        out.add_term(SeriesKey { t: -x.a - k.t, q: -x.u - k.q, z }, c.clone());
    }
    Ok(out)
}

/// A `(t, q)`-homogeneous linear form used as a Koszul generator.
#[derive(Clone, Debug, Serialize)]
pub struct Generator {
    /// `(index into the interval, coefficient)` pairs.
    #[serde(skip)]
    pub form: Vec<(usize, BigRational)>,
    pub support: Vec<Vertex>,
    /// The `(t, q)` weight of the form.
    pub weight: (i64, i64),
}

impl std::fmt::Display for Generator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.support.iter().map(|v| format!("λ{v}")).collect();
        write!(f, "{}", parts.join("+"))
    }
}

/// The forms `Reg` of a vertex set, each split by level so that every
/// generator is `(t, q)`-homogeneous.
///
/// The split forms generate an ideal containing `Reg`, so they cut out the
/// same radical.
pub fn reg_generators(model: &AlgebraModel, set: &[Vertex]) -> Vec<Generator> {
    let mut out = Vec::new();
    for form in reg_alt(set).reg {
        let mut by_level: BTreeMap<i64, Vec<(Vertex, i64)>> = BTreeMap::new();
        for (v, c) in form {
            by_level.entry(v.level_u()).or_default().push((v, c));
        }
        for (u, part) in by_level {
            out.push(Generator {
                form: part
                    .iter()
                    .map(|(v, c)| (model.index_of(*v).expect("vertex of the interval"), BigRational::from_integer((*c).into())))
                    .collect(),
                support: part.iter().map(|(v, _)| *v).collect(),
                weight: (1, u),
            });
        }
    }
    out
}

/// Truncated Koszul limit complexes `K^•(A; x_1^n, …, x_r^n)` sliced by `(t, q)`.
///
/// In weight `w` the term for `S ⊆ {1..r}` is `A_{w + n Σ_{k∈S} wt(x_k)}`
/// and the differential adds `x_k^n` with the Koszul sign.
pub struct KoszulLimit {
    pub model: AlgebraModel,
    pub generators: Vec<Generator>,
    /// `(source slice, generator, n)` → rows of `x_k^n` in target coordinates.
    products: HashMap<((i64, i64), usize, u32), Vec<SparseVec>>,
}

/// First-page dimensions `E_1^{p,q}` of the filtration by the number of
/// generators from the first group; the differential of the second group
/// is taken first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FirstPage {
    /// `(p, q, dim)` with `p` first-group and `q` second-group generators.
    pub entries: Vec<(usize, usize, u64)>,
}

impl FirstPage {
    pub fn get(&self, p: usize, q: usize) -> u64 {
        self.entries.iter().find(|e| e.0 == p && e.1 == q).map_or(0, |e| e.2)
    }

    /// `Σ_{p+q=k} dim E_1^{p,q}`.
    pub fn total(&self, k: usize) -> u64 {
        self.entries.iter().filter(|e| e.0 + e.1 == k).map(|e| e.2).sum()
    }

    pub fn euler(&self) -> i64 {
        self.entries.iter().map(|e| if (e.0 + e.1) % 2 == 0 { e.2 as i64 } else { -(e.2 as i64) }).sum()
    }
}

impl KoszulLimit {
    pub fn new(model: AlgebraModel, generators: Vec<Generator>) -> Result<KoszulLimit> {
        if generators.len() > 16 {
            return Err(Error::BudgetExceeded(format!("{} Koszul generators, above 16", generators.len())));
        }
        Ok(KoszulLimit { model, generators, products: HashMap::new() })
    }

    fn slice_of(&self, w: (i64, i64), n: u32, mask: u32) -> (i64, i64) {
        let mut s = w;
        for (k, g) in self.generators.iter().enumerate() {
            if mask >> k & 1 == 1 {
                s.0 += n as i64 * g.weight.0;
                s.1 += n as i64 * g.weight.1;
            }
        }
        s
    }

    fn dim_of(&mut self, slice: (i64, i64)) -> usize {
        self.model.slice_basis(slice.0, slice.1).len()
    }

    fn products(&mut self, source: (i64, i64), k: usize, n: u32) -> Result<&Vec<SparseVec>> {
        let key = (source, k, n);
        if !self.products.contains_key(&key) {
            let g = &self.generators[k];
            let target = (source.0 + n as i64 * g.weight.0, source.1 + n as i64 * g.weight.1);
            let form = g.form.clone();
            let src = self.model.slice_basis(source.0, source.1).monomials.clone();
            let tgt = self.model.slice_basis(target.0, target.1).clone();
            let mut rows = Vec::with_capacity(src.len());
            for m in &src {
                let prod = self.model.times_form_power(m, &form, n);
                rows.push(tgt.coordinates(&prod)?);
            }
            self.products.insert(key, rows);
        }
        Ok(&self.products[&key])
    }

    /// Total dimension of the complex in weight `w`.
    pub fn complex_dimension(&mut self, w: (i64, i64), n: u32) -> usize {
        let r = self.generators.len();
        (0u32..(1u32 << r)).map(|mask| {
            let s = self.slice_of(w, n, mask);
            self.dim_of(s)
        }).sum()
    }

    /// `dim C^k` for `k = 0..=r` in weight `w`.
    pub fn term_dimensions(&mut self, w: (i64, i64), n: u32) -> Vec<usize> {
        let by_size = self.masks_by_size();
        by_size
            .iter()
            .map(|masks| {
                masks
                    .iter()
                    .map(|&m| {
                        let s = self.slice_of(w, n, m);
                        self.dim_of(s)
                    })
                    .sum()
            })
            .collect()
    }

    /// Rank of the part of the differential leaving the terms `sources` and
    /// adding generators from `allowed`.
    fn block_rank(&mut self, w: (i64, i64), n: u32, sources: &[u32], allowed: u32) -> Result<usize> {
        let r = self.generators.len();
        let mut offsets: HashMap<u32, usize> = HashMap::new();
        let mut next_offset = 0usize;
        let mut rows: Vec<SparseVec> = Vec::new();
        for &mask in sources {
            let src = self.slice_of(w, n, mask);
            let dim = self.dim_of(src);
            if dim == 0 {
                continue;
            }
            let mut block: Vec<SparseVec> = vec![SparseVec::new(); dim];
            for k in 0..r {
                if mask >> k & 1 == 1 || allowed >> k & 1 == 0 {
                    continue;
                }
                let tmask = mask | (1u32 << k);
                let tslice = self.slice_of(w, n, tmask);
                if self.dim_of(tslice) == 0 {
                    continue;
                }
                let off = match offsets.get(&tmask) {
                    Some(o) => *o,
                    None => {
                        let o = next_offset;
                        next_offset += self.dim_of(tslice);
                        offsets.insert(tmask, o);
                        o
                    }
                };
                let sign = sign_below(mask, k);
                let prods = self.products(src, k, n)?;
                for (row, p) in block.iter_mut().zip(prods) {
                    for (c, x) in p {
                        row.insert(off + c, &sign * x);
                    }
                }
            }
            rows.extend(block);
        }
        Ok(rank_fraction_free(&rows))
    }

    fn masks_by_size(&self) -> Vec<Vec<u32>> {
        let r = self.generators.len();
        let mut out = vec![Vec::new(); r + 1];
        for mask in 0u32..(1u32 << r) {
            out[mask.count_ones() as usize].push(mask);
        }
        out
    }

    /// `dim H^i K^•(A; x^n)_w` for `i = 0..=r`.
    pub fn cohomology(&mut self, w: (i64, i64), n: u32, budget: usize) -> Result<Vec<u64>> {
        let size = self.complex_dimension(w, n);
        if size > budget {
            return Err(Error::BudgetExceeded(format!("weight {w:?} at n = {n}: complex of dimension {size}")));
        }
        let r = self.generators.len();
        let all = (1u32 << r) - 1;
        let by_size = self.masks_by_size();
        let mut dims = Vec::with_capacity(r + 1);
        let mut ranks = Vec::with_capacity(r + 1);
        for masks in &by_size {
            let mut d = 0usize;
            for &m in masks {
                let s = self.slice_of(w, n, m);
                d += self.dim_of(s);
            }
            dims.push(d);
            ranks.push(self.block_rank(w, n, masks, all)?);
        }
        Ok((0..=r).map(|k| (dims[k] - ranks[k] - if k > 0 { ranks[k - 1] } else { 0 }) as u64).collect())
    }

    /// First page of the filtration by the generators in `first` (a bitmask).
    pub fn first_page(&mut self, w: (i64, i64), n: u32, first: u32) -> Result<FirstPage> {
        let r = self.generators.len();
        let all = (1u32 << r) - 1;
        let first = first & all;
        let second = all & !first;
        let mut cells: BTreeMap<(usize, usize), Vec<u32>> = BTreeMap::new();
        for mask in 0u32..=all {
            let p = (mask & first).count_ones() as usize;
            let q = (mask & second).count_ones() as usize;
            cells.entry((p, q)).or_default().push(mask);
        }
        let mut dims: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        let mut ranks: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for (key, masks) in &cells {
            let mut d = 0usize;
            for &m in masks {
                let s = self.slice_of(w, n, m);
                d += self.dim_of(s);
            }
            dims.insert(*key, d);
            ranks.insert(*key, self.block_rank(w, n, masks, second)?);
        }
        let entries = dims
            .iter()
            .map(|(&(p, q), &d)| {
                let into = ranks[&(p, q)];
                let from = if q > 0 { ranks.get(&(p, q - 1)).copied().unwrap_or(0) } else { 0 };
                (p, q, (d - into - from) as u64)
            })
            .filter(|e| e.2 > 0)
            .collect();
        Ok(FirstPage { entries })
    }
}

/// A rectangular `(t, q)` window.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct WeightWindow {
    pub t_min: i64,
    pub t_max: i64,
    pub u_min: i64,
    pub u_max: i64,
}

impl WeightWindow {
    pub fn weights(&self) -> Vec<(i64, i64)> {
        let mut out = Vec::new();
        for u in self.u_min..=self.u_max {
            for t in self.t_min..=self.t_max {
                out.push((t, u));
            }
        }
        out
    }
}

/// Truncated-limit cohomology dimensions in one weight.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightCohomology {
    pub t: i64,
    pub u: i64,
    /// `by_n[n − 1][i] = dim H^i K^•(A; x^n)` for the exponents computed.
    pub by_n: Vec<Vec<u64>>,
    /// The first `n` with `by_n[n − 1] = by_n[n]`, if any.
    pub stable_from: Option<u32>,
    /// Set when an exponent exceeded the slice budget.
    pub budget_exceeded: bool,
}

impl WeightCohomology {
    /// The stabilized dimensions, when two consecutive exponents agreed.
    pub fn stable(&self) -> Option<&[u64]> {
        self.stable_from.map(|n| self.by_n[n as usize - 1].as_slice())
    }

    /// `Σ (−1)^i dim H^i` of the stabilized dimensions.
    pub fn euler(&self) -> Option<i64> {
        self.stable().map(|d| d.iter().enumerate().map(|(i, x)| if i % 2 == 0 { *x as i64 } else { -(*x as i64) }).sum())
    }
}

/// `H^i_c(A)` weight spaces from truncated Koszul limits.
#[derive(Clone, Debug, Serialize)]
pub struct LocalCohomologyTable {
    pub interval: String,
    pub ideal: IdealKind,
    pub generators: Vec<String>,
    pub window: WeightWindow,
    pub n_max: u32,
    pub weights: Vec<WeightCohomology>,
    /// Stabilization is declared when two consecutive exponents agree; the
    /// rule is a heuristic.
    pub rule: String,
}

impl LocalCohomologyTable {
    pub fn all_stable(&self) -> bool {
        self.weights.iter().all(|w| w.stable_from.is_some())
    }

    pub fn unstable(&self) -> Vec<(i64, i64)> {
        self.weights.iter().filter(|w| w.stable_from.is_none()).map(|w| (w.t, w.u)).collect()
    }

    /// Cohomological degrees with a nonzero stabilized weight space.
    pub fn nonzero_degrees(&self) -> BTreeSet<usize> {
        self.weights
            .iter()
            .filter_map(|w| w.stable())
            .flat_map(|d| d.iter().enumerate().filter(|(_, x)| **x > 0).map(|(i, _)| i).collect::<Vec<_>>())
            .collect()
    }

    /// `(i, t, u) → dim` over the stabilized weights.
    pub fn stabilized(&self) -> BTreeMap<(usize, i64, i64), u64> {
        let mut out = BTreeMap::new();
        for w in &self.weights {
            if let Some(d) = w.stable() {
                for (i, x) in d.iter().enumerate() {
                    if *x > 0 {
                        out.insert((i, w.t, w.u), *x);
                    }
                }
            }
        }
        out
    }
}

/// Weight spaces of `H^i_c(A)` from `lim_n H^i K^•(A; λ̄^n)` with `λ̄` the
/// level-split `Reg` forms of `N(c)`.
///
/// Each weight is computed for `n = 1, 2, …` until two consecutive
/// exponents agree or `n_max` is reached. Weights are independent jobs.
pub fn local_cohomology_weights(
    i: &Interval,
    ideal: &IdealDescriptor,
    window: &WeightWindow,
    n_max: u32,
    budget: usize,
) -> Result<LocalCohomologyTable> {
    if i.len() > MAX_KOSZUL_VERTICES {
        return Err(Error::BudgetExceeded(format!("{i} has {} vertices", i.len())));
    }
    let probe = AlgebraModel::new(i)?;
    let gens = reg_generators(&probe, &ideal.n_set);
    let names: Vec<String> = gens.iter().map(|g| g.to_string()).collect();
    let weights = window.weights();
    let results: Vec<Result<WeightCohomology>> = weights
        .par_iter()
        .map_init(
            || AlgebraModel::new(i).and_then(|m| KoszulLimit::new(m, reg_generators(&probe, &ideal.n_set))),
            |engine, &(t, u)| {
                let engine = engine.as_mut().map_err(|e| e.clone())?;
                let mut by_n: Vec<Vec<u64>> = Vec::new();
                let mut stable_from = None;
                let mut budget_exceeded = false;
                for n in 1..=n_max {
                    match engine.cohomology((t, u), n, budget) {
                        Ok(d) => by_n.push(d),
                        Err(Error::BudgetExceeded(_)) => {
                            budget_exceeded = true;
                            break;
                        }
                        Err(e) => return Err(e),
                    }
                    if by_n.len() >= 2 && by_n[by_n.len() - 1] == by_n[by_n.len() - 2] {
                        stable_from = Some(n - 1);
                        break;
                    }
                }
                Ok(WeightCohomology { t, u, by_n, stable_from, budget_exceeded })
            },
        )
        .collect();
    let weights = results.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(LocalCohomologyTable {
        interval: i.to_string(),
        ideal: ideal.kind,
        generators: names,
        window: *window,
        n_max,
        weights,
        rule: "stable when two consecutive exponents n agree (heuristic)".into(),
    })
}

/// First page of the truncated Koszul limit complex of `Reg` on `N(c)` in
/// weight `w`, filtered by the generators in `first`.
pub fn bicomplex_split(i: &Interval, ideal: &IdealDescriptor, w: (i64, i64), n: u32, first: u32) -> Result<FirstPage> {
    let model = AlgebraModel::new(i)?;
    let gens = reg_generators(&model, &ideal.n_set);
    KoszulLimit::new(model, gens)?.first_page(w, n, first)
}
