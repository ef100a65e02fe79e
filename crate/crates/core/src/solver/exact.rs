use std::time::Instant;

use super::dimension::dimension_exact;
use super::report::{Method, SolveReport};
use super::{signature, xor_count};
use crate::dag::{count_incomparable, transitive_closure, Dag, Reachability};
use crate::drawing::TopoOrder;
use crate::error::{Error, Result};
use crate::linext::{enumerate_extensions, ExtensionSet};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LedResult {
    pub led: usize,
    /// Diametral pair; the smallest index pair `(i, j)`, `i < j`, over the
    /// lexicographic extension list. A poset with one extension pairs it with
    /// itself.
    pub pair: (TopoOrder, TopoOrder),
    pub extension_count: usize,
}

fn complete_extensions(r: &Reachability, cap: usize) -> Result<ExtensionSet> {
    let e = enumerate_extensions(r, cap);
    if e.is_truncated() {
        return Err(Error::ExtensionCapExceeded { cap });
    }
    Ok(e)
}

/// Maximum distance over all pairs; returns `(led, i, j)`.
fn diameter(r: &Reachability, e: &ExtensionSet) -> (usize, usize, usize) {
    let inc = r.inc_pairs().len();
    let sigs: Vec<Vec<u64>> = e.extensions().iter().map(|l| signature(l, r)).collect();
    let mut best = (0, 0, 0);
    for i in 0..sigs.len() {
        for j in i + 1..sigs.len() {
            let d = xor_count(&sigs[i], &sigs[j]);
            if d > best.0 {
                best = (d, i, j);
                // No pair can invert more than the incomparable pairs.
                if d == inc {
                    return best;
                }
            }
        }
    }
    best
}

/// Minimum fip count over all drawings built from two extensions, counted
/// pair by pair from the coordinates; returns `(min_fip, i, j)`.
fn min_fip_direct(r: &Reachability, e: &ExtensionSet) -> (usize, usize, usize) {
    let ext = e.extensions();
    let inc = r.inc_pairs();
    let mut best = (usize::MAX, 0, 0);
    // fip(i, j) = fip(j, i), so the pairs with i <= j cover every ordered pair.
    for i in 0..ext.len() {
        for j in i..ext.len() {
            let (x, y) = (&ext[i], &ext[j]);
            let fips = inc
                .iter()
                .filter(|&&(u, v)| {
                    (x.position(u) < x.position(v) && y.position(u) < y.position(v))
                        || (x.position(v) < x.position(u) && y.position(v) < y.position(u))
                })
                .count();
            if fips < best.0 {
                best = (fips, i, j);
                if fips == 0 {
                    return best;
                }
            }
        }
    }
    best
}

pub fn led_exact(r: &Reachability, cap: usize) -> Result<LedResult> {
    let e = complete_extensions(r, cap)?;
    let (led, i, j) = diameter(r, &e);
    let ext = e.extensions();
    Ok(LedResult { led, pair: (ext[i].clone(), ext[j].clone()), extension_count: e.len() })
}

fn base_report(g: &Dag, r: &Reachability, method: Method) -> SolveReport {
    SolveReport {
        labels: g.labels().to_vec(),
        n: g.n(),
        edge_count: g.edge_count(),
        closure_edge_count: r.closure_edge_count(),
        inc: count_incomparable(r),
        extension_count: None,
        led: None,
        min_fip: None,
        diametral_pair: None,
        optimal_pair: None,
        dim: None,
        realizer: None,
        method,
        timings: Vec::new(),
    }
}

struct ExactRun {
    report: SolveReport,
    closure: Reachability,
    extensions: ExtensionSet,
}

fn run_exact(g: &Dag, cap: usize) -> Result<ExactRun> {
    let t = Instant::now();
    let r = transitive_closure(g);
    let mut report = base_report(g, &r, Method::Exact);
    report.timings.push(("closure", t.elapsed()));

    let t = Instant::now();
    let e = complete_extensions(&r, cap)?;
    report.timings.push(("enumerate", t.elapsed()));
    let ext = e.extensions();

    let t = Instant::now();
    let (direct, i, j) = min_fip_direct(&r, &e);
    report.timings.push(("min_fip_direct", t.elapsed()));

    let t = Instant::now();
    let (led, di, dj) = diameter(&r, &e);
    report.timings.push(("led", t.elapsed()));

    let dual = report.inc - led;
    if direct != dual {
        return Err(Error::IdentityMismatch { direct, dual });
    }
    report.extension_count = Some(e.len());
    report.led = Some(led);
    report.min_fip = Some(direct);
    report.optimal_pair = Some((ext[i].clone(), ext[j].clone()));
    report.diametral_pair = Some((ext[di].clone(), ext[dj].clone()));
    Ok(ExactRun { report, closure: r, extensions: e })
}

/// Minimum fip count by exhaustive search over extension pairs, cross-checked
/// against `inc − led`. The two must agree; a disagreement is returned as
/// [`Error::IdentityMismatch`].
pub fn minfip_exact(g: &Dag, cap: usize) -> Result<SolveReport> {
    run_exact(g, cap).map(|run| run.report)
}

/// [`minfip_exact`] plus the exact dimension when it is at most `max_dim`.
/// A larger dimension leaves `dim` empty rather than failing.
pub fn solve_exact(g: &Dag, cap: usize, max_dim: usize) -> Result<SolveReport> {
    let ExactRun { mut report, closure, extensions } = run_exact(g, cap)?;
    let t = Instant::now();
    match dimension_exact(&closure, &extensions, max_dim) {
        Ok(realizer) => {
            report.dim = Some(realizer.dim());
            report.realizer = Some(realizer);
        }
        Err(Error::DimExceedsMax { .. }) => {}
        Err(e) => return Err(e),
    }
    report.timings.push(("dimension", t.elapsed()));
    Ok(report)
}

/// Diameter only; `min_fip` is filled in as `inc − led`.
pub fn led_report(g: &Dag, cap: usize) -> Result<SolveReport> {
    let t = Instant::now();
    let r = transitive_closure(g);
    let mut report = base_report(g, &r, Method::Exact);
    report.timings.push(("closure", t.elapsed()));
    let t = Instant::now();
    let res = led_exact(&r, cap)?;
    report.timings.push(("led", t.elapsed()));
    report.extension_count = Some(res.extension_count);
    report.led = Some(res.led);
    report.min_fip = Some(report.inc - res.led);
    report.diametral_pair = Some(res.pair);
    Ok(report)
}

/// Dimension only. Unlike [`solve_exact`], exceeding `max_dim` is an error.
pub fn dimension_report(g: &Dag, cap: usize, max_dim: usize) -> Result<SolveReport> {
    let t = Instant::now();
    let r = transitive_closure(g);
    let mut report = base_report(g, &r, Method::Exact);
    report.timings.push(("closure", t.elapsed()));
    let t = Instant::now();
    let e = complete_extensions(&r, cap)?;
    report.timings.push(("enumerate", t.elapsed()));
    let t = Instant::now();
    let realizer = dimension_exact(&r, &e, max_dim)?;
    report.timings.push(("dimension", t.elapsed()));
    report.extension_count = Some(e.len());
    report.dim = Some(realizer.dim());
    report.realizer = Some(realizer);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dag::{gen_antichain, gen_chain, gen_crown, gen_grid, gen_random_dag};
    use crate::linext::{distance, DEFAULT_CAP};

    #[test]
    fn crown_led_and_min_fip() {
        let g = gen_crown(3);
        let r = transitive_closure(&g);
        let led = led_exact(&r, DEFAULT_CAP).unwrap();
        assert_eq!(led.led, 8);
        assert_eq!(distance(&led.pair.0, &led.pair.1, &r).unwrap(), 8);

        let rep = minfip_exact(&g, DEFAULT_CAP).unwrap();
        assert_eq!((rep.inc, rep.led, rep.min_fip), (9, Some(8), Some(1)));
        let (x, y) = rep.optimal_pair.clone().unwrap();
        let d = crate::drawing::make_drawing(&g, x, y).unwrap();
        assert_eq!(d.fip_count(), 1);
    }

    #[test]
    fn trivial_posets() {
        let chain = transitive_closure(&gen_chain(6));
        let res = led_exact(&chain, DEFAULT_CAP).unwrap();
        assert_eq!(res.led, 0);
        assert_eq!(res.pair.0, res.pair.1);
        let anti = transitive_closure(&gen_antichain(3));
        assert_eq!(led_exact(&anti, DEFAULT_CAP).unwrap().led, 3);
        for n in 0..2 {
            let rep = solve_exact(&gen_chain(n), DEFAULT_CAP, 4).unwrap();
            assert_eq!((rep.led, rep.min_fip, rep.dim), (Some(0), Some(0), Some(1)));
        }
    }

    #[test]
    fn dimension_two_collapses() {
        let rep = minfip_exact(&gen_grid(2, 3), DEFAULT_CAP).unwrap();
        assert_eq!(rep.min_fip, Some(0));
        assert_eq!(rep.led, Some(rep.inc));
    }

    #[test]
    fn cap_is_enforced() {
        let r = transitive_closure(&gen_antichain(5));
        assert_eq!(led_exact(&r, 100), Err(Error::ExtensionCapExceeded { cap: 100 }));
        assert!(minfip_exact(&gen_antichain(5), 119).is_err());
        assert!(minfip_exact(&gen_antichain(5), 120).is_ok());
    }

    #[test]
    fn direct_and_dual_agree_on_random_dags() {
        for seed in 0..40u64 {
            let g = gen_random_dag(6, 0.3, seed);
            let rep = minfip_exact(&g, DEFAULT_CAP).unwrap();
            assert_eq!(rep.min_fip.unwrap() + rep.led.unwrap(), rep.inc);
        }
    }

    #[test]
    fn reports_agree() {
        let g = gen_crown(3);
        let led = led_report(&g, DEFAULT_CAP).unwrap();
        assert_eq!((led.led, led.min_fip, led.dim), (Some(8), Some(1), None));
        let dim = dimension_report(&g, DEFAULT_CAP, 5).unwrap();
        assert_eq!(dim.dim, Some(3));
        assert_eq!(
            dimension_report(&g, DEFAULT_CAP, 2).unwrap_err(),
            Error::DimExceedsMax { max_dim: 2, lower_bound: 3 }
        );
        let full = solve_exact(&g, DEFAULT_CAP, 2).unwrap();
        assert_eq!(full.dim, None);
    }
}
