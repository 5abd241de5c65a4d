//! Subcommand implementations. Each returns a [`Report`].

use std::collections::BTreeSet;

use serde_json::{json, Value};
use spinor_core::hilbert::{
    a_invariant, chi, hilbert_dp, hilbert_function, hilbert_rational_elements, koszul_duality_with, path_series,
    path_weights, stanley_palindromy, Quiver, Refine,
};
use spinor_core::homology::{
    duality_check, koszul_betti_artinian, koszul_betti_with_budget, local_cohomology_weights, WeightWindow,
    DEFAULT_BETTI_BUDGET, DEFAULT_SLICE_BUDGET,
};
use spinor_core::interval::{cap2_table, enumerate_cap2};
use spinor_core::partition::{
    functional_equation, q_expand, slice_window, solve_twist, stabilization_scan, verify_bv_duality, z_bare_ideal,
    z_renorm, Equation, IdealDescriptor, IdealKind,
};
use spinor_core::poset::{in_m, m_class, vertices_in_band, Side, Vertex};
use spinor_core::rational::{RationalExport, RationalFunction};
use spinor_core::{Interval, Result};

use crate::output::Report;

fn rational_json(r: &RationalFunction) -> Value {
    serde_json::to_value(RationalExport::from(r)).expect("exports serialize")
}

fn strings<T: ToString>(v: &[T]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

pub fn classify(i: &Interval) -> Result<Report> {
    let mut r = Report::new("classify");
    let s = i.summary();
    r.field("interval", s.interval)
        .field("gorenstein", s.gorenstein)
        .field("capacity", s.capacity)
        .field("rank", s.rank)
        .field("size", s.size)
        .field("core_size", s.core_size)
        .field("open_lower", s.open_lower)
        .field("open_upper", s.open_upper);
    if i.is_closed() {
        let p = stanley_palindromy(i.elements(), i.rank()).ok();
        r.field("join_irreducibles_pure", i.join_irreducibles().is_pure())
            .field("palindromic", p.as_ref().map(|p| p.palindromic))
            .field("h_vector", p.as_ref().map(|p| p.h.clone()))
            .field("palindromy_exponent", p.and_then(|p| p.p));
    }
    r.key_value_table();
    Ok(r)
}

pub fn hilbert(i: &Interval, t_max: i64, refine: Refine, rational: bool) -> Result<Report> {
    let mut r = Report::new("hilbert");
    let s = hilbert_dp(i, t_max, refine);
    let rows = s.rows();
    let dims: Vec<String> = s.forget_q().forget_z().t_coeffs(0).iter().map(ToString::to_string).collect();
    r.field("interval", i.to_string())
        .field("refine", format!("{refine:?}").to_lowercase())
        .field("dimensions", dims)
        .field(
            "coefficients",
            rows.iter().map(|(t, q, z, c)| json!({"t": t, "q": q, "z": z, "c": c})).collect::<Vec<_>>(),
        );
    if rational {
        r.field("rational", rational_json(&hilbert_rational_elements(i.elements())?));
    }
    r.bound("tmax", t_max);
    let table = rows.into_iter().map(|(t, q, z, c)| vec![t.to_string(), q.to_string(), format!("{z:?}"), c]).collect();
    r.table(&["t", "q", "z", "coefficient"], table);
    Ok(r)
}

pub fn chi_cmd(i: &Interval) -> Result<Report> {
    let mut r = Report::new("chi");
    let w = chi(i)?;
    r.field("interval", i.to_string())
        .field("a", w.a)
        .field("u", w.u)
        .field("r", w.r.to_vec())
        .field("a_invariant", a_invariant(i)?)
        .key_value_table();
    Ok(r)
}

pub fn duality(i: &Interval, t_max: usize, quiver: Quiver) -> Result<Report> {
    let mut r = Report::new("duality");
    let ok = koszul_duality_with(i.elements(), t_max, quiver);
    let dims = hilbert_function(i.elements(), t_max);
    let paths = path_series(i.elements(), t_max, quiver);
    r.field("interval", i.to_string())
        .field("quiver", format!("{quiver:?}").to_lowercase())
        .field("holds", ok)
        .field("hilbert", strings(&dims))
        .field("paths", strings(&paths))
        .bound("tmax", t_max);
    let rows = (0..=t_max).map(|d| vec![d.to_string(), dims[d].to_string(), paths[d].to_string()]).collect();
    r.table(&["degree", "dim A", "dim SR!"], rows);
    r.defect = !ok;
    Ok(r)
}

pub fn partition(i: &Interval, renorm: bool, kind: IdealKind) -> Result<Report> {
    let mut r = Report::new("partition");
    r.field("interval", i.to_string());
    let f = if renorm {
        let pf = z_renorm(i)?;
        r.field("ideal", IdealKind::A.name())
            .field("renormalized", true)
            .field("twist", vec![pf.twist.0, pf.twist.1])
            .field("bare", rational_json(&pf.bare));
        pf.form
    } else {
        r.field("ideal", kind.name()).field("renormalized", false);
        z_bare_ideal(i, kind)?
    };
    r.field("function", rational_json(&f));
    r.table(&["field", "value"], vec![vec!["function".into(), f.to_string()]]);
    Ok(r)
}

fn slice_json(q: i64, s: &RationalFunction, t_depth: usize) -> Result<Value> {
    let t_start = s.numerator().t_range().map_or(0, |r| r.0);
    Ok(json!({
        "q": q,
        "t_start": t_start,
        "coefficients": strings(&slice_window(s, t_start, t_depth)?),
        "slice": s.to_string(),
    }))
}

pub fn qexpand(interval: Option<&Interval>, q_min: i64, q_max: i64, t_depth: usize, n_max: i64) -> Result<Report> {
    let mut r = Report::new("qexpand");
    r.bound("qmin", q_min).bound("qmax", q_max).bound("tdepth", t_depth);
    let mut rows = Vec::new();
    match interval {
        Some(i) => {
            let slices = q_expand(&z_renorm(i)?, q_min, q_max)?;
            let mut out = Vec::new();
            for (q, s) in &slices {
                out.push(slice_json(*q, s, t_depth)?);
                rows.push(vec![q.to_string(), String::new(), s.to_string()]);
            }
            r.field("interval", i.to_string()).field("slices", out);
        }
        None => {
            let orders: Vec<i64> = (q_min..=q_max).collect();
            let report = stabilization_scan(&orders, t_depth, n_max)?;
            let out: Vec<Value> = report
                .slices
                .iter()
                .map(|s| {
                    rows.push(vec![s.q_degree.to_string(), format!("{:?}", s.stable_from), s.slice.to_string()]);
                    json!({
                        "q": s.q_degree,
                        "stable_from": s.stable_from,
                        "t_start": s.t_start,
                        "coefficients": strings(&s.coefficients),
                        "slice": s.slice.to_string(),
                    })
                })
                .collect();
            r.field("family", "[(0)^-N:(1)^N]")
                .field("n_max_used", report.n_max_used)
                .field("budget_exceeded", report.budget_exceeded)
                .field("all_stable", report.all_stable())
                .field("slices", out)
                .bound("nmax", n_max);
        }
    }
    r.table(&["q", "stable_from", "slice"], rows);
    Ok(r)
}

/// Which monomial constant `verify` checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Constant {
    /// The constant printed with the equation.
    Stated,
    /// The constant solved for from the leading terms.
    Solved,
}

pub fn verify_equation(eq: Equation, i: &Interval, constant: Constant) -> Result<Report> {
    let mut r = Report::new("verify");
    let twist = match constant {
        Constant::Stated => Some(eq.stated_twist()),
        Constant::Solved => solve_twist(i, eq)?,
    };
    r.field("equation", format!("{eq:?}").to_lowercase()).field("interval", i.to_string());
    match twist {
        Some(tw) => {
            let c = functional_equation(i, eq, tw)?;
            r.field("image", c.image.to_string())
                .field("sign", tw.0)
                .field("t_exponent", tw.1)
                .field("q_exponent", tw.2)
                .field("holds", c.holds())
                .field("defect", rational_json(&c.defect));
            r.defect = !c.holds();
        }
        None => {
            r.field("holds", false).field("twist_found", false);
            r.defect = true;
        }
    }
    r.key_value_table();
    Ok(r)
}

pub fn verify_bv(i: &Interval) -> Result<Report> {
    let mut r = Report::new("verify");
    let b = verify_bv_duality(i)?;
    r.field("equation", "bv")
        .field("interval", b.interval.clone())
        .field("t_exponent", b.t_exponent)
        .field("q_exponent", b.q_exponent)
        .field("sign", b.sign)
        .field("holds", b.holds())
        .field("holds_without_q_twist", b.holds_without_q_twist)
        .key_value_table();
    r.defect = !b.holds();
    Ok(r)
}

/// Betti table algorithm selected by `--method`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Method {
    Artinian,
    Direct,
}

pub fn betti(i: &Interval, j_max: i64, method: Method, budget: Option<usize>) -> Result<Report> {
    let mut r = Report::new("betti");
    let bt = match method {
        Method::Artinian => koszul_betti_artinian(i)?,
        Method::Direct => koszul_betti_with_budget(i, j_max, budget.unwrap_or(DEFAULT_BETTI_BUDGET))?,
    };
    let gorenstein = i.is_closed() && i.is_gorenstein();
    r.field("interval", i.to_string())
        .field("method", format!("{:?}", bt.method))
        .field("j_max", bt.j_max)
        .field("entries", serde_json::to_value(&bt.entries).expect("entries serialize"))
        .field("gorenstein", gorenstein)
        .field("symmetric", bt.is_symmetric());
    if method == Method::Artinian {
        let ok = duality_check(&bt, gorenstein);
        r.field("duality_consistent", ok);
        r.defect = !ok;
    }
    r.bound("jmax", bt.j_max);
    let rows = bt.entries.iter().map(|e| vec![e.i.to_string(), e.j.to_string(), e.b.to_string()]).collect();
    r.table(&["i", "j", "b"], rows);
    Ok(r)
}

pub fn loccoh(i: &Interval, kind: IdealKind, window: WeightWindow, n_max: u32, budget: Option<usize>) -> Result<Report> {
    let mut r = Report::new("loccoh");
    let ideal = if kind == IdealKind::M { IdealDescriptor::maximal(i) } else { IdealDescriptor::new(i, kind)? };
    let tab = local_cohomology_weights(i, &ideal, &window, n_max, budget.unwrap_or(DEFAULT_SLICE_BUDGET))?;
    let lo = -i.lower.rho();
    r.field("interval", i.to_string())
        .field("ideal", kind.name())
        .field("generators", tab.generators.clone())
        .field("rule", tab.rule.clone())
        .field("nonzero_degrees", tab.nonzero_degrees().into_iter().collect::<Vec<_>>())
        .field("vanishing_range", vec![lo, lo + 3])
        .field("unstable", tab.unstable().iter().map(|(t, u)| vec![*t, *u]).collect::<Vec<_>>())
        .field("weights", serde_json::to_value(&tab.weights).expect("weights serialize"))
        .bound("nmax", n_max)
        .bound("window", serde_json::to_value(window).expect("window serializes"));
    let rows = tab
        .weights
        .iter()
        .map(|w| {
            let dims = w.stable().map_or_else(|| "unstable".to_string(), |d| format!("{d:?}"));
            vec![w.t.to_string(), w.u.to_string(), dims, w.euler().map_or_else(String::new, |e| e.to_string())]
        })
        .collect();
    r.table(&["t", "u", "H^i", "euler"], rows);
    Ok(r)
}

pub fn enumerate_cap2_cmd(rho_lo: i64, rho_hi: i64) -> Result<Report> {
    let mut r = Report::new("enumerate-cap2");
    let found = enumerate_cap2(rho_lo, rho_hi);
    let listed: BTreeSet<(Vertex, Vertex)> = (rho_lo.div_euclid(8) - 1..=rho_hi.div_euclid(8) + 1)
        .flat_map(cap2_table)
        .filter(|(lo, _)| (rho_lo..rho_hi).contains(&lo.rho()))
        .collect();
    let found_set: BTreeSet<(Vertex, Vertex)> = found.iter().map(|i| (i.lower, i.upper)).collect();
    let matches = found_set == listed;
    let rows: Vec<Vec<String>> = found
        .iter()
        .map(|i| {
            vec![
                i.to_string(),
                i.rank().to_string(),
                m_class(i.lower, Side::Plus).to_string(),
                m_class(i.upper, Side::Minus).to_string(),
            ]
        })
        .collect();
    r.field("count", found.len())
        .field("intervals", found.iter().map(ToString::to_string).collect::<Vec<_>>())
        .field("matches_table", matches)
        .bound("rho_lo", rho_lo)
        .bound("rho_hi", rho_hi);
    r.table(&["interval", "rank", "M+ class of lower", "M- class of upper"], rows);
    r.defect = !matches;
    Ok(r)
}

pub fn paths(i: &Interval, d_max: usize, quiver: Quiver, weights: bool) -> Result<Report> {
    let mut r = Report::new("paths");
    let counts = path_series(i.elements(), d_max, quiver);
    r.field("interval", i.to_string())
        .field("quiver", format!("{quiver:?}").to_lowercase())
        .field("counts", strings(&counts))
        .bound("dmax", d_max);
    if weights {
        let w = path_weights(i.elements(), d_max, quiver);
        let rows: Vec<Value> = w.iter().map(|((d, u), c)| json!({"d": d, "u": u, "count": c.to_string()})).collect();
        r.field("weights", rows);
    }
    let rows = counts.iter().enumerate().map(|(d, c)| vec![d.to_string(), c.to_string()]).collect();
    r.table(&["length", "paths"], rows);
    Ok(r)
}

pub fn poset(interval: Option<&Interval>, lo: i64, hi: i64) -> Result<Report> {
    let mut r = Report::new("poset");
    let vertices: Vec<Vertex> = match interval {
        Some(i) => i.elements().to_vec(),
        None => vertices_in_band(lo, hi),
    };
    let mut rows = Vec::new();
    let mut out = Vec::new();
    for v in &vertices {
        let w = v.weight();
        let (x, y) = v.f_embed();
        let covers = strings(&v.covers());
        let (mp, mm) = (m_class(*v, Side::Plus), m_class(*v, Side::Minus));
        out.push(json!({
            "vertex": v.to_string(), "rho": v.rho(), "u": v.level_u(), "f": [x, y], "ell": v.ell(),
            "weight": {"a": w.a, "u": w.u, "r": w.r}, "covers": covers, "m_plus": mp, "m_minus": mm, "in_m": in_m(*v),
        }));
        rows.push(vec![v.to_string(), v.rho().to_string(), v.level_u().to_string(), format!("({x},{y})"), covers.join(" "), mp.to_string(), mm.to_string()]);
    }
    match interval {
        Some(i) => r.field("interval", i.to_string()),
        None => r.bound("rho_lo", lo).bound("rho_hi", hi),
    };
    r.field("vertices", out);
    r.table(&["vertex", "rho", "u", "f", "covers", "M+", "M-"], rows);
    Ok(r)
}
