//! Weak dominance drawings built from pairs of topological sortings.
//!
//! A drawing places vertex `v` at `(X(v), Y(v))`, the 1-based ranks of `v` in
//! the two sortings. Every path u→v is then drawn as a dominance
//! `X(u) < X(v)`, `Y(u) < Y(v)`; an incomparable pair that is nevertheless
//! dominated is a falsely implied path (fip).

use std::fmt::Write as _;
use std::str::FromStr;

use crate::dag::{transitive_closure, Dag, Reachability};
use crate::error::{Error, Result};

/// A permutation of the vertices; a topological sorting once validated
/// against a graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TopoOrder {
    // `seq` is compared first, so the derived `Ord` is lexicographic on the
    // vertex sequence.
    seq: Vec<usize>,
    pos: Vec<usize>,
}

impl TopoOrder {
    /// Wraps a vertex sequence, checking only that it is a permutation of `0..n`.
    pub fn from_sequence(seq: Vec<usize>) -> Result<Self> {
        let n = seq.len();
        let mut pos = vec![usize::MAX; n];
        for (i, &v) in seq.iter().enumerate() {
            if v >= n || pos[v] != usize::MAX {
                return Err(Error::InvalidOrder(format!("{seq:?} is not a permutation of 0..{n}")));
            }
            pos[v] = i;
        }
        Ok(TopoOrder { seq, pos })
    }

    pub(crate) fn from_sequence_unchecked(seq: Vec<usize>) -> Self {
        let mut pos = vec![0; seq.len()];
        for (i, &v) in seq.iter().enumerate() {
            pos[v] = i;
        }
        TopoOrder { seq, pos }
    }

    /// Builds the order and checks it against the edges of `g`.
    pub fn for_dag(seq: Vec<usize>, g: &Dag) -> Result<Self> {
        let t = Self::from_sequence(seq)?;
        t.check_dag(g)?;
        Ok(t)
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    pub fn sequence(&self) -> &[usize] {
        &self.seq
    }

    /// 0-based position of `v`.
    #[inline]
    pub fn position(&self, v: usize) -> usize {
        self.pos[v]
    }

    /// 1-based rank of `v`, used as its grid coordinate.
    pub fn rank(&self, v: usize) -> usize {
        self.pos[v] + 1
    }

    #[inline]
    pub fn precedes(&self, u: usize, v: usize) -> bool {
        self.pos[u] < self.pos[v]
    }

    pub fn check_dag(&self, g: &Dag) -> Result<()> {
        if self.len() != g.n() {
            return Err(Error::InvalidOrder(format!(
                "order has {} vertices, graph has {}",
                self.len(),
                g.n()
            )));
        }
        match g.edges().iter().find(|&&(u, v)| !self.precedes(u, v)) {
            Some(&(u, v)) => Err(Error::InvalidOrder(format!(
                "edge {} -> {} is reversed",
                g.label(u),
                g.label(v)
            ))),
            None => Ok(()),
        }
    }

    /// Checks that this is a linear extension of `r`.
    pub fn check_poset(&self, r: &Reachability) -> Result<()> {
        if self.len() != r.n() {
            return Err(Error::InvalidOrder(format!(
                "order has {} vertices, poset has {}",
                self.len(),
                r.n()
            )));
        }
        for (i, &u) in self.seq.iter().enumerate() {
            for &v in &self.seq[i + 1..] {
                if r.reaches(v, u) {
                    return Err(Error::InvalidOrder(format!("{v} must precede {u}")));
                }
            }
        }
        Ok(())
    }

    pub fn labelled(&self, labels: &[String]) -> Vec<String> {
        self.seq.iter().map(|&v| labels[v].clone()).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeakDominanceDrawing {
    dag: Dag,
    tx: TopoOrder,
    ty: TopoOrder,
    inc: usize,
    /// Incomparable pairs `(u, v)`, `u < v`, dominated in one direction.
    fips: Vec<(usize, usize)>,
}

impl WeakDominanceDrawing {
    pub fn dag(&self) -> &Dag {
        &self.dag
    }

    pub fn tx(&self) -> &TopoOrder {
        &self.tx
    }

    pub fn ty(&self) -> &TopoOrder {
        &self.ty
    }

    pub fn x(&self, v: usize) -> usize {
        self.tx.rank(v)
    }

    pub fn y(&self, v: usize) -> usize {
        self.ty.rank(v)
    }

    pub fn fips(&self) -> &[(usize, usize)] {
        &self.fips
    }

    pub fn fip_count(&self) -> usize {
        self.fips.len()
    }

    /// inc(G) of the drawn graph.
    pub fn inc(&self) -> usize {
        self.inc
    }
}

/// Kahn's algorithm with min-id tie-break.
pub fn topological_sort(g: &Dag) -> TopoOrder {
    TopoOrder::from_sequence_unchecked(g.min_id_kahn())
}

pub fn make_drawing(g: &Dag, tx: TopoOrder, ty: TopoOrder) -> Result<WeakDominanceDrawing> {
    tx.check_dag(g)?;
    ty.check_dag(g)?;
    let r = transitive_closure(g);
    Ok(drawing_from_closure(g, &r, tx, ty))
}

/// Same as [`make_drawing`] for orders already known to be extensions of `r`.
pub(crate) fn drawing_from_closure(
    g: &Dag,
    r: &Reachability,
    tx: TopoOrder,
    ty: TopoOrder,
) -> WeakDominanceDrawing {
    let fips = r
        .inc_pairs()
        .iter()
        .copied()
        .filter(|&(u, v)| tx.precedes(u, v) == ty.precedes(u, v))
        .collect();
    WeakDominanceDrawing { dag: g.clone(), tx, ty, inc: r.inc_pairs().len(), fips }
}

pub fn count_fips(d: &WeakDominanceDrawing) -> usize {
    d.fip_count()
}

/// |I|, the number of ordered pairs placed in the same order by both sortings.
pub fn intersection_cardinality(g: &Dag, tx: &TopoOrder, ty: &TopoOrder) -> Result<usize> {
    tx.check_dag(g)?;
    ty.check_dag(g)?;
    let n = g.n();
    let mut same = 0;
    for u in 0..n {
        for v in u + 1..n {
            if tx.precedes(u, v) == ty.precedes(u, v) {
                same += 1;
            }
        }
    }
    Ok(same)
}

/// Both axes use the same sorting, so every incomparable pair becomes a fip.
pub fn diagonal_drawing(g: &Dag) -> WeakDominanceDrawing {
    let t = topological_sort(g);
    let r = transitive_closure(g);
    drawing_from_closure(g, &r, t.clone(), t)
}

pub fn is_dominance_drawing(d: &WeakDominanceDrawing) -> bool {
    d.fip_count() == 0
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DrawingFormat {
    Coords,
    Svg,
}

impl FromStr for DrawingFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "coords" => Ok(DrawingFormat::Coords),
            "svg" => Ok(DrawingFormat::Svg),
            other => Err(Error::UnknownFormat(other.to_string())),
        }
    }
}

pub fn emit_drawing(d: &WeakDominanceDrawing, format: DrawingFormat) -> String {
    match format {
        DrawingFormat::Coords => emit_coords(d),
        DrawingFormat::Svg => emit_svg(d),
    }
}

fn emit_coords(d: &WeakDominanceDrawing) -> String {
    let mut out = String::new();
    for v in 0..d.dag.n() {
        writeln!(out, "{} {} {}", d.dag.label(v), d.x(v), d.y(v)).unwrap();
    }
    out
}

// SVG layout: grid cells of SPACING px, MARGIN px border, Y axis pointing up.
// Graph edges are thin solid lines; fips are bold dashed red lines.
const SPACING: usize = 60;
const MARGIN: usize = 40;
const RADIUS: usize = 7;

fn emit_svg(d: &WeakDominanceDrawing) -> String {
    let n = d.dag.n();
    let extent = n.saturating_sub(1) * SPACING;
    let size = extent + 2 * MARGIN;
    let px = |v: usize| MARGIN + (d.x(v) - 1) * SPACING;
    let py = |v: usize| MARGIN + extent - (d.y(v) - 1) * SPACING;

    let mut s = String::new();
    s.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{size}\" height=\"{size}\" viewBox=\"0 0 {size} {size}\">"
    )
    .unwrap();
    s.push_str("<rect x=\"0\" y=\"0\" width=\"100%\" height=\"100%\" fill=\"white\"/>\n");

    s.push_str("<g class=\"grid\" stroke=\"#dddddd\" stroke-width=\"1\">\n");
    for i in 0..n {
        let c = MARGIN + i * SPACING;
        let (lo, hi) = (MARGIN, MARGIN + extent);
        writeln!(s, "<line x1=\"{c}\" y1=\"{lo}\" x2=\"{c}\" y2=\"{hi}\"/>").unwrap();
        writeln!(s, "<line x1=\"{lo}\" y1=\"{c}\" x2=\"{hi}\" y2=\"{c}\"/>").unwrap();
    }
    s.push_str("</g>\n");

    s.push_str("<g class=\"edges\" stroke=\"#333333\" stroke-width=\"1.5\">\n");
    for &(u, v) in d.dag.edges() {
        writeln!(
            s,
            "<line class=\"edge\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>",
            px(u),
            py(u),
            px(v),
            py(v)
        )
        .unwrap();
    }
    s.push_str("</g>\n");

    s.push_str(
        "<g class=\"fips\" stroke=\"#cc0000\" stroke-width=\"3.5\" stroke-dasharray=\"8 5\">\n",
    );
    for &(u, v) in &d.fips {
        // Draw from the dominated endpoint to the dominating one.
        let (a, b) = if d.tx.precedes(u, v) { (u, v) } else { (v, u) };
        writeln!(
            s,
            "<line class=\"fip\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>",
            px(a),
            py(a),
            px(b),
            py(b)
        )
        .unwrap();
    }
    s.push_str("</g>\n");

    s.push_str("<g class=\"vertices\" font-family=\"sans-serif\" font-size=\"13\">\n");
    for v in 0..n {
        let (x, y) = (px(v), py(v));
        writeln!(s, "<circle cx=\"{x}\" cy=\"{y}\" r=\"{RADIUS}\" fill=\"#1f4e99\"/>").unwrap();
        writeln!(
            s,
            "<text x=\"{}\" y=\"{}\">{}</text>",
            x + RADIUS + 3,
            y - RADIUS - 3,
            xml_escape(d.dag.label(v))
        )
        .unwrap();
    }
    s.push_str("</g>\n</svg>\n");
    s
}

fn xml_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dag::{count_incomparable, gen_antichain, gen_chain, gen_crown, gen_grid};

    fn order(g: &Dag, seq: &[usize]) -> TopoOrder {
        TopoOrder::for_dag(seq.to_vec(), g).unwrap()
    }

    #[test]
    fn topo_sort_respects_edges_against_id_order() {
        let g = Dag::new(3, [(2, 1), (1, 0)]).unwrap();
        assert_eq!(topological_sort(&g).sequence(), &[2, 1, 0]);
    }

    #[test]
    fn topo_sort_crown_and_antichain() {
        let c = gen_crown(3);
        let t = topological_sort(&c);
        assert_eq!(t.sequence(), &[0, 1, 2, 3, 4, 5]);
        assert_eq!((t.rank(0), t.rank(3)), (1, 4));
        assert_eq!(topological_sort(&gen_antichain(3)).sequence(), &[0, 1, 2]);
    }

    #[test]
    fn from_sequence_rejects_non_permutations() {
        assert!(TopoOrder::from_sequence(vec![0, 0, 1]).is_err());
        assert!(TopoOrder::from_sequence(vec![0, 3, 1]).is_err());
        let g = gen_chain(3);
        assert!(matches!(
            TopoOrder::for_dag(vec![1, 0, 2], &g),
            Err(Error::InvalidOrder(_))
        ));
        assert!(TopoOrder::for_dag(vec![0, 1], &g).is_err());
    }

    #[test]
    fn make_drawing_rejects_invalid_orders() {
        let g = gen_chain(3);
        let good = topological_sort(&g);
        let bad = TopoOrder::from_sequence(vec![2, 1, 0]).unwrap();
        assert!(matches!(make_drawing(&g, good.clone(), bad.clone()), Err(Error::InvalidOrder(_))));
        assert!(intersection_cardinality(&g, &bad, &good).is_err());
    }

    #[test]
    fn chain_drawing_has_no_fips() {
        let g = gen_chain(4);
        let t = topological_sort(&g);
        let d = make_drawing(&g, t.clone(), t).unwrap();
        assert_eq!(count_fips(&d), 0);
        assert!(is_dominance_drawing(&d));
    }

    // Crown ids: a1..a3 = 0..2, b1..b3 = 3..5; ai -> bj for i != j.
    #[test]
    fn crown_diagonal_and_optimal() {
        let g = gen_crown(3);
        let diag = diagonal_drawing(&g);
        assert_eq!(count_fips(&diag), 9);
        assert_eq!(diag.inc(), 9);

        // a1 a2 b3 a3 b2 b1 / a3 a2 b1 a1 b2 b3: only {a2, b2} is left dominated.
        let tx = order(&g, &[0, 1, 5, 2, 4, 3]);
        let ty = order(&g, &[2, 1, 3, 0, 4, 5]);
        let d = make_drawing(&g, tx.clone(), ty.clone()).unwrap();
        assert_eq!(count_fips(&d), 1);
        assert_eq!(d.fips(), &[(1, 4)]);
        assert!(!is_dominance_drawing(&d));
        assert_eq!(intersection_cardinality(&g, &tx, &ty).unwrap(), 7);
    }

    #[test]
    fn crown_three_fip_drawing() {
        let g = gen_crown(3);
        let tx = order(&g, &[0, 1, 2, 3, 4, 5]);
        let ty = order(&g, &[2, 1, 0, 5, 4, 3]);
        let d = make_drawing(&g, tx, ty).unwrap();
        // Only the three {ai, bi} pairs stay dominated.
        assert_eq!(d.fips(), &[(0, 3), (1, 4), (2, 5)]);
    }

    #[test]
    fn intersection_of_identical_orders() {
        let g = gen_crown(3);
        let t = topological_sort(&g);
        assert_eq!(intersection_cardinality(&g, &t, &t).unwrap(), 15);
        let c = gen_chain(3);
        let t = topological_sort(&c);
        assert_eq!(intersection_cardinality(&c, &t, &t).unwrap(), 3);
    }

    #[test]
    fn antichain_diagonal() {
        let g = gen_antichain(3);
        assert_eq!(count_fips(&diagonal_drawing(&g)), 3);
        assert_eq!(count_fips(&diagonal_drawing(&gen_chain(5))), 0);
    }

    #[test]
    fn grid_realizer_pair_is_dominance() {
        // 2x2 grid: r0c0=0, r0c1=1, r1c0=2, r1c1=3.
        let g = gen_grid(2, 2);
        let d = make_drawing(&g, order(&g, &[0, 1, 2, 3]), order(&g, &[0, 2, 1, 3])).unwrap();
        assert!(is_dominance_drawing(&d));
        assert_eq!(count_incomparable(&transitive_closure(&g)), 1);
    }

    #[test]
    fn weak_dominance_holds_for_closure_pairs() {
        let g = gen_crown(4);
        let d = diagonal_drawing(&g);
        let r = transitive_closure(&g);
        for (u, v) in r.closure_edges() {
            assert!(d.x(u) < d.x(v) && d.y(u) < d.y(v));
        }
    }

    #[test]
    fn coords_output() {
        let g = gen_chain(2);
        let d = diagonal_drawing(&g);
        assert_eq!(emit_drawing(&d, DrawingFormat::Coords), "0 1 1\n1 2 2\n");
        let empty = diagonal_drawing(&gen_chain(0));
        assert_eq!(emit_drawing(&empty, DrawingFormat::Coords), "");
        let svg = emit_drawing(&empty, DrawingFormat::Svg);
        assert!(svg.starts_with("<?xml") && svg.trim_end().ends_with("</svg>"));
    }

    #[test]
    fn svg_marks_each_fip_once() {
        let g = gen_crown(3);
        let d = make_drawing(&g, order(&g, &[0, 1, 5, 2, 4, 3]), order(&g, &[2, 1, 3, 0, 4, 5]))
            .unwrap();
        let svg = emit_drawing(&d, DrawingFormat::Svg);
        assert_eq!(svg.matches("class=\"fip\"").count(), 1);
        assert_eq!(svg.matches("class=\"edge\"").count(), 6);
        assert_eq!(svg.matches("<circle").count(), 6);
    }

    #[test]
    fn svg_escapes_labels() {
        let g = Dag::with_labels(vec!["a<b".into(), "c&d".into()], [(0, 1)]).unwrap();
        let svg = emit_drawing(&diagonal_drawing(&g), DrawingFormat::Svg);
        assert!(svg.contains("a&lt;b") && svg.contains("c&amp;d"));
    }

    #[test]
    fn format_parsing() {
        assert_eq!("svg".parse::<DrawingFormat>().unwrap(), DrawingFormat::Svg);
        assert_eq!("png".parse::<DrawingFormat>(), Err(Error::UnknownFormat("png".into())));
    }
}
