use super::{degeneracy, exact_arboricity, VerificationReport, Violation, ViolationKind};
use crate::coloring::{Coloring, ColoringKind, PartialOrientation};
use crate::decomposition::{ForestLabeling, HPartition};
use crate::graph::Graph;
use crate::sim::VertexId;
use std::collections::{BTreeMap, HashMap};

/// Violations are capped so a badly broken input does not produce a huge
/// report; the first few witnesses are enough.
const MAX_REPORTED: usize = 64;

#[derive(Default)]
struct Collector {
    violations: Vec<Violation>,
    measured: BTreeMap<String, u64>,
}

impl Collector {
    fn push(&mut self, kind: ViolationKind, vertices: Vec<VertexId>, detail: impl Into<String>) {
        if self.violations.len() < MAX_REPORTED {
            self.violations.push(Violation {
                kind,
                vertices,
                detail: detail.into(),
            });
        }
    }

    fn measure(&mut self, key: &str, value: impl TryInto<u64>) {
        self.measured
            .insert(key.to_string(), value.try_into().unwrap_or(u64::MAX));
    }

    fn finish(self) -> VerificationReport {
        VerificationReport::new(self.violations, self.measured)
    }
}

fn degree_bound(a: u32, eps: f64) -> u64 {
    ((2.0 + eps) * a as f64 + 1e-9).floor() as u64
}

fn check_len(c: &mut Collector, what: &str, got: usize, n: usize) -> bool {
    if got != n {
        c.push(
            ViolationKind::Coverage,
            vec![],
            format!("{what} covers {got} vertices, graph has {n}"),
        );
        return false;
    }
    true
}

/// Kahn's algorithm over `succ`; returns the vertices left on cycles.
fn cyclic_vertices(n: usize, succ: &[Vec<VertexId>]) -> Vec<VertexId> {
    let mut indeg = vec![0usize; n];
    for s in succ {
        for &w in s {
            indeg[w as usize] += 1;
        }
    }
    let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    while let Some(v) = stack.pop() {
        for &w in &succ[v] {
            indeg[w as usize] -= 1;
            if indeg[w as usize] == 0 {
                stack.push(w as usize);
            }
        }
    }
    (0..n).filter(|&v| indeg[v] > 0).map(|v| v as VertexId).collect()
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut x = x;
        while self.0[x] != r {
            let next = self.0[x];
            self.0[x] = r;
            x = next;
        }
        r
    }

    /// False when `x` and `y` were already connected.
    fn union(&mut self, x: usize, y: usize) -> bool {
        let (rx, ry) = (self.find(x), self.find(y));
        if rx == ry {
            return false;
        }
        self.0[rx] = ry;
        true
    }
}

/// Every `v` in `H_i` has at most `floor((2 + eps) a)` neighbours on levels
/// `>= i`, and every vertex has a level.
pub fn verify_h_partition(g: &Graph, hp: &HPartition, a: u32, eps: f64) -> VerificationReport {
    let mut c = Collector::default();
    let bound = degree_bound(a, eps);
    c.measure("degree_bound", bound);
    if !check_len(&mut c, "partition", hp.level.len(), g.n()) {
        return c.finish();
    }
    let mut worst = 0u64;
    for v in g.vertices() {
        let lv = hp.level[v as usize];
        if lv == 0 {
            c.push(ViolationKind::Coverage, vec![v], "vertex has no level");
            continue;
        }
        let up = g
            .neighbors(v)
            .iter()
            .filter(|&&w| hp.level[w as usize] >= lv)
            .count() as u64;
        worst = worst.max(up);
        if up > bound {
            c.push(
                ViolationKind::DegreeBound,
                vec![v],
                format!("{up} neighbours on levels >= {lv}, bound {bound}"),
            );
        }
    }
    c.measure("levels", hp.ell());
    c.measure("max_upward_degree", worst);
    c.finish()
}

/// Checks that the arcs cover every edge exactly once, labels are distinct per
/// vertex, every label class is a forest, the orientation is acyclic, and at
/// most `floor((2 + eps) a)` labels are used.
pub fn verify_forest_decomposition(
    g: &Graph,
    fl: &ForestLabeling,
    a: u32,
    eps: f64,
) -> VerificationReport {
    let mut c = Collector::default();
    let n = g.n();
    if !check_len(&mut c, "labeling", fl.n(), n) {
        return c.finish();
    }
    let bound = degree_bound(a, eps);
    let mut orientations: HashMap<(VertexId, VertexId), u32> = HashMap::new();
    let mut by_label: BTreeMap<u32, Vec<(VertexId, VertexId)>> = BTreeMap::new();
    let mut succ: Vec<Vec<VertexId>> = vec![Vec::new(); n];

    for v in g.vertices() {
        let mut labels = Vec::new();
        for &(p, l) in &fl.parents[v as usize] {
            if !g.has_edge(v, p) {
                c.push(ViolationKind::NotAnEdge, vec![v, p], "arc is not a graph edge");
                continue;
            }
            if l == 0 {
                c.push(ViolationKind::LabelOutOfRange, vec![v, p], "label 0");
            }
            *orientations.entry((v.min(p), v.max(p))).or_default() += 1;
            by_label.entry(l).or_default().push((v, p));
            succ[v as usize].push(p);
            labels.push(l);
        }
        labels.sort_unstable();
        if let Some(w) = labels.windows(2).find(|w| w[0] == w[1]) {
            c.push(
                ViolationKind::DuplicateLabel,
                vec![v],
                format!("label {} used twice on outgoing edges", w[0]),
            );
        }
    }
    for (u, v) in g.edges() {
        match orientations.get(&(u, v)).copied().unwrap_or(0) {
            0 => c.push(ViolationKind::Unoriented, vec![u, v], "edge has no label"),
            1 => {}
            k => c.push(ViolationKind::DoublyOriented, vec![u, v], format!("edge oriented {k} times")),
        }
    }
    for (&label, arcs) in &by_label {
        let mut dsu = Dsu::new(n);
        for &(u, v) in arcs {
            if !dsu.union(u as usize, v as usize) {
                c.push(
                    ViolationKind::ForestCycle,
                    vec![u, v],
                    format!("label {label} closes a cycle"),
                );
                break;
            }
        }
    }
    let cyc = cyclic_vertices(n, &succ);
    if !cyc.is_empty() {
        c.push(ViolationKind::OrientationCycle, cyc, "orientation has a directed cycle");
    }
    let forests = fl.num_forests() as u64;
    if forests > bound {
        c.push(
            ViolationKind::TooManyForests,
            vec![],
            format!("{forests} forests, bound {bound}"),
        );
    }
    c.measure("forests", forests);
    c.measure("forest_bound", bound);
    c.measure("max_out_degree", fl.max_out_degree());
    c.finish()
}

/// Checks colors are in range and then the property named by `coloring.kind`.
pub fn verify_coloring(g: &Graph, coloring: &Coloring) -> VerificationReport {
    let mut c = Collector::default();
    if !check_len(&mut c, "coloring", coloring.colors.len(), g.n()) {
        return c.finish();
    }
    let col = &coloring.colors;
    for v in g.vertices() {
        let x = col[v as usize];
        if x == 0 || x > coloring.palette_size {
            c.push(
                ViolationKind::ColorOutOfRange,
                vec![v],
                format!("color {x} outside 1..={}", coloring.palette_size),
            );
        }
    }
    c.measure("palette", coloring.palette_size);
    c.measure("used_colors", coloring.used_colors());
    match coloring.kind {
        ColoringKind::Proper => {
            for (u, v) in g.edges() {
                if col[u as usize] == col[v as usize] {
                    c.push(
                        ViolationKind::Monochromatic,
                        vec![u, v],
                        format!("both endpoints colored {}", col[u as usize]),
                    );
                }
            }
        }
        ColoringKind::Defective(m) => {
            let mut worst = 0usize;
            for v in g.vertices() {
                let same = g
                    .neighbors(v)
                    .iter()
                    .filter(|&&w| col[w as usize] == col[v as usize])
                    .count();
                worst = worst.max(same);
                if same > m as usize {
                    c.push(
                        ViolationKind::DefectExceeded,
                        vec![v],
                        format!("{same} same-colored neighbours, allowed {m}"),
                    );
                }
            }
            c.measure("max_defect", worst);
        }
        ColoringKind::Arbdefective(r) => {
            // classes are vertex-disjoint, so the union of the class subgraphs
            // has the maximum class degeneracy and arboricity
            let classes = g.filter_edges(|u, v| col[u as usize] == col[v as usize]);
            let d = degeneracy(&classes);
            c.measure("max_class_degeneracy", d);
            if d > (2 * r).saturating_sub(1) {
                c.push(
                    ViolationKind::ClassDegeneracy,
                    vec![],
                    format!("class degeneracy {d} exceeds 2r-1 = {}", (2 * r).saturating_sub(1)),
                );
            }
            if let Ok(arb) = exact_arboricity(&classes) {
                c.measure("max_class_arboricity", arb);
                if arb > r {
                    c.push(
                        ViolationKind::ClassArboricity,
                        vec![],
                        format!("class arboricity {arb} exceeds {r}"),
                    );
                }
            }
        }
    }
    c.finish()
}

fn check_orientation(c: &mut Collector, g: &Graph, o: &PartialOrientation) -> bool {
    if !check_len(c, "orientation", o.n(), g.n()) || !check_len(c, "orientation", o.unoriented.len(), g.n()) {
        return false;
    }
    let mut count: HashMap<(VertexId, VertexId), (u32, u32)> = HashMap::new();
    for v in g.vertices() {
        for &p in &o.parents[v as usize] {
            if !g.has_edge(v, p) {
                c.push(ViolationKind::NotAnEdge, vec![v, p], "arc is not a graph edge");
            }
            count.entry((v.min(p), v.max(p))).or_default().0 += 1;
        }
        for &w in &o.unoriented[v as usize] {
            if !g.has_edge(v, w) {
                c.push(ViolationKind::NotAnEdge, vec![v, w], "unoriented entry is not a graph edge");
            }
            count.entry((v.min(w), v.max(w))).or_default().1 += 1;
        }
    }
    for (u, v) in g.edges() {
        match count.get(&(u, v)).copied().unwrap_or((0, 0)) {
            (1, 0) | (0, 2) => {}
            (0, 0) => c.push(ViolationKind::Unoriented, vec![u, v], "edge missing from orientation"),
            (a, b) => c.push(
                ViolationKind::DoublyOriented,
                vec![u, v],
                format!("edge appears as {a} arcs and {b} unoriented entries"),
            ),
        }
    }
    let cyc = cyclic_vertices(g.n(), &o.parents);
    if !cyc.is_empty() {
        c.push(ViolationKind::OrientationCycle, cyc, "oriented part has a directed cycle");
        return false;
    }
    true
}

/// Consistency and acyclicity of a partial orientation plus its two bounds.
pub fn verify_partial_orientation(
    g: &Graph,
    o: &PartialOrientation,
    deficit: u32,
    outdeg: u32,
) -> VerificationReport {
    let mut c = Collector::default();
    let acyclic = check_orientation(&mut c, g, o);
    if c.violations.iter().any(|v| v.kind == ViolationKind::Coverage) {
        return c.finish();
    }
    for v in g.vertices() {
        let un = o.unoriented[v as usize].len();
        if un > deficit as usize {
            c.push(ViolationKind::DeficitExceeded, vec![v], format!("{un} unoriented, bound {deficit}"));
        }
        let out = o.parents[v as usize].len();
        if out > outdeg as usize {
            c.push(ViolationKind::OutDegreeExceeded, vec![v], format!("out-degree {out}, bound {outdeg}"));
        }
    }
    c.measure("max_deficit", o.max_deficit());
    c.measure("max_out_degree", o.max_out_degree());
    if acyclic {
        c.measure("longest_path", o.longest_path());
    }
    c.finish()
}

/// For every vertex, same-colored parents plus same-colored unoriented
/// neighbours must not exceed `bound`.
pub fn verify_arbdefective_witness(
    g: &Graph,
    coloring: &Coloring,
    o: &PartialOrientation,
    bound: u32,
) -> VerificationReport {
    let mut c = Collector::default();
    if !check_len(&mut c, "coloring", coloring.colors.len(), g.n()) {
        return c.finish();
    }
    check_orientation(&mut c, g, o);
    if c.violations.iter().any(|v| v.kind == ViolationKind::Coverage) {
        return c.finish();
    }
    let col = &coloring.colors;
    let mut worst = 0usize;
    for v in g.vertices() {
        let mine = col[v as usize];
        let w = o.parents[v as usize]
            .iter()
            .chain(&o.unoriented[v as usize])
            .filter(|&&u| col[u as usize] == mine)
            .count();
        worst = worst.max(w);
        if w > bound as usize {
            c.push(
                ViolationKind::WitnessExceeded,
                vec![v],
                format!("class out-degree plus unoriented is {w}, bound {bound}"),
            );
        }
    }
    c.measure("max_witness", worst);
    c.measure("witness_bound", bound);
    c.measure("classes", coloring.used_colors());
    c.finish()
}

/// Independence and maximality of the vertex set given by `member`.
pub fn verify_mis(g: &Graph, member: &[bool]) -> VerificationReport {
    let mut c = Collector::default();
    if !check_len(&mut c, "membership", member.len(), g.n()) {
        return c.finish();
    }
    for (u, v) in g.edges() {
        if member[u as usize] && member[v as usize] {
            c.push(ViolationKind::NotIndependent, vec![u, v], "both endpoints in the set");
        }
    }
    for v in g.vertices() {
        if !member[v as usize] && !g.neighbors(v).iter().any(|&w| member[w as usize]) {
            c.push(ViolationKind::NotMaximal, vec![v], "no neighbour in the set");
        }
    }
    c.measure("size", member.iter().filter(|&&b| b).count());
    c.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, GraphFamily, GraphFamilySpec};

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n as u32).map(|v| (v - 1, v))).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        generate(&GraphFamilySpec::new(GraphFamily::Cycle { n }, 0)).unwrap()
    }

    fn star(n: usize) -> Graph {
        generate(&GraphFamilySpec::new(GraphFamily::Star { n }, 0)).unwrap()
    }

    #[test]
    fn h_partition_fixtures() {
        let hp = HPartition { level: vec![1; 4] };
        assert!(verify_h_partition(&path(4), &hp, 1, 2.0).ok);

        let r = verify_h_partition(&star(7), &HPartition { level: vec![1; 7] }, 1, 2.0);
        assert!(!r.ok);
        assert_eq!(r.violations[0].kind, ViolationKind::DegreeBound);
        assert_eq!(r.violations[0].vertices, vec![0]);

        let r = verify_h_partition(&path(3), &HPartition { level: vec![] }, 1, 2.0);
        assert!(r.has(ViolationKind::Coverage));
    }

    #[test]
    fn forest_decomposition_fixtures() {
        let e = Graph::from_edges(2, [(0, 1)]).unwrap();
        let fl = ForestLabeling { parents: vec![vec![(1, 1)], vec![]] };
        assert!(verify_forest_decomposition(&e, &fl, 1, 2.0).ok);

        let k3 = Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let fl = ForestLabeling { parents: vec![vec![(1, 1)], vec![(2, 1)], vec![(0, 1)]] };
        let r = verify_forest_decomposition(&k3, &fl, 1, 2.0);
        assert!(r.has(ViolationKind::OrientationCycle));

        // C_4 as two paths, every edge toward the higher ID
        let c4 = cycle(4);
        let fl = ForestLabeling {
            parents: vec![vec![(1, 1), (3, 2)], vec![(2, 1)], vec![(3, 1)], vec![]],
        };
        let r = verify_forest_decomposition(&c4, &fl, 2, 2.0);
        assert!(r.ok, "{r}");
        assert_eq!(r.measured("forests"), Some(2));

        let missing = ForestLabeling { parents: vec![vec![(1, 1)], vec![(2, 1)], vec![(3, 1)], vec![]] };
        assert!(verify_forest_decomposition(&c4, &missing, 2, 2.0).has(ViolationKind::Unoriented));
        let dup = ForestLabeling {
            parents: vec![vec![(1, 1), (3, 1)], vec![(2, 1)], vec![(3, 2)], vec![]],
        };
        let r = verify_forest_decomposition(&c4, &dup, 2, 2.0);
        assert!(r.has(ViolationKind::DuplicateLabel));
        let cyc = ForestLabeling {
            parents: vec![vec![(1, 1), (3, 1)], vec![(2, 1)], vec![(3, 1)], vec![]],
        };
        let r = verify_forest_decomposition(&c4, &cyc, 2, 2.0);
        assert!(r.has(ViolationKind::ForestCycle));
    }

    #[test]
    fn coloring_fixtures() {
        let k3 = Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let r = verify_coloring(&k3, &Coloring::from_colors(vec![1, 2, 3], ColoringKind::Proper));
        assert!(r.ok);
        assert_eq!(r.measured("palette"), Some(3));
        assert!(!verify_coloring(&k3, &Coloring::from_colors(vec![1, 1, 2], ColoringKind::Proper)).ok);
        assert!(verify_coloring(&k3, &Coloring::from_colors(vec![1, 1, 2], ColoringKind::Defective(1))).ok);

        let c6 = cycle(6);
        let mono = |r| Coloring::from_colors(vec![1; 6], ColoringKind::Arbdefective(r));
        let r = verify_coloring(&c6, &mono(1));
        assert!(r.has(ViolationKind::ClassArboricity) && r.has(ViolationKind::ClassDegeneracy));
        assert!(verify_coloring(&c6, &mono(2)).ok);

        let r = verify_coloring(&k3, &Coloring::new(vec![1, 2, 4], ColoringKind::Proper, 3));
        assert!(r.has(ViolationKind::ColorOutOfRange));
    }

    #[test]
    fn mis_fixtures() {
        let p5 = path(5);
        let set = |s: &[u32]| (0..5).map(|v| s.contains(&v)).collect::<Vec<_>>();
        assert!(verify_mis(&p5, &set(&[0, 2, 4])).ok);
        assert!(verify_mis(&p5, &set(&[0, 3])).ok);
        assert!(verify_mis(&p5, &set(&[0, 1])).has(ViolationKind::NotIndependent));
        let r = verify_mis(&p5, &set(&[0, 4]));
        assert_eq!(r.violations[0].vertices, vec![2]);
    }

    #[test]
    fn partial_orientation_and_witness() {
        // C_4 with one unoriented edge 0-3, rest toward higher ID
        let c4 = cycle(4);
        let o = PartialOrientation {
            parents: vec![vec![1], vec![2], vec![3], vec![]],
            unoriented: vec![vec![3], vec![], vec![], vec![0]],
            deficit_bound: 1,
            outdeg_bound: 1,
        };
        let r = verify_partial_orientation(&c4, &o, 1, 1);
        assert!(r.ok, "{r}");
        assert_eq!(r.measured("longest_path"), Some(4));
        assert!(verify_partial_orientation(&c4, &o, 0, 1).has(ViolationKind::DeficitExceeded));

        let one = Coloring::from_colors(vec![1; 4], ColoringKind::Arbdefective(2));
        assert!(verify_arbdefective_witness(&c4, &one, &o, 2).ok);
        assert!(verify_arbdefective_witness(&c4, &one, &o, 1).has(ViolationKind::WitnessExceeded));
        let two = Coloring::from_colors(vec![1, 2, 1, 2], ColoringKind::Arbdefective(0));
        assert!(verify_arbdefective_witness(&c4, &two, &o, 0).ok);

        let half = PartialOrientation {
            unoriented: vec![vec![3], vec![], vec![], vec![]],
            ..o
        };
        assert!(verify_partial_orientation(&c4, &half, 1, 1).has(ViolationKind::DoublyOriented));
    }
}
