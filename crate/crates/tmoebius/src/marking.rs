use crate::diagram::{FloorDiagram, VertexKind};
use crate::partition::Partition;
use itertools::Itertools;
use serde::Serialize;
use std::collections::BTreeSet;
use std::fmt;

/// A markable cell: a vertex, a bounded edge, or an end.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Cell {
    Vertex(usize),
    Edge(usize),
    End(usize),
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell::Vertex(i) => write!(f, "vertex:{i}"),
            Cell::Edge(i) => write!(f, "edge:{i}"),
            Cell::End(i) => write!(f, "end:{i}"),
        }
    }
}

impl Serialize for Cell {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Component type after deleting the marked elevators.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ComponentType {
    /// Contains one ground floor, no unmarked end, no cycle.
    GroundTree,
    /// Contains one unmarked end, no ground floor, no cycle.
    FreeEndTree,
    /// Contains one cycle through an odd number of joints, no ground
    /// floor, no unmarked end.
    OddCycle,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct ClassifiedComponent {
    pub vertices: Vec<usize>,
    pub kind: ComponentType,
}

/// Reason a component fails to be of one of the three allowed types.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct ComponentDefect {
    pub vertices: Vec<usize>,
    pub ground_count: usize,
    pub free_end_count: usize,
    pub cycle_rank: usize,
    /// Joints on the unique cycle, when there is exactly one cycle.
    pub cycle_joints: Option<usize>,
}

/// Splits the diagram along its marked elevators and classifies each
/// component. Marked vertices do not split anything.
pub fn classify_components(
    d: &FloorDiagram,
    marked: &BTreeSet<Cell>,
) -> Result<Vec<ClassifiedComponent>, ComponentDefect> {
    let n = d.vertex_count();
    let alive_edge: Vec<bool> = (0..d.edges().len())
        .map(|i| !marked.contains(&Cell::Edge(i)))
        .collect();

    let mut comp = vec![usize::MAX; n];
    let mut count = 0;
    for start in 0..n {
        if comp[start] != usize::MAX {
            continue;
        }
        comp[start] = count;
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for (i, e) in d.edges().iter().enumerate() {
                if !alive_edge[i] {
                    continue;
                }
                let other = if e.tail == v {
                    e.head
                } else if e.head == v {
                    e.tail
                } else {
                    continue;
                };
                if comp[other] == usize::MAX {
                    comp[other] = count;
                    stack.push(other);
                }
            }
        }
        count += 1;
    }

    let mut out = Vec::with_capacity(count);
    for c in 0..count {
        let vertices: Vec<usize> = (0..n).filter(|&v| comp[v] == c).collect();
        let ground_count = vertices
            .iter()
            .filter(|&&v| matches!(d.vertices()[v], VertexKind::Ground { .. }))
            .count();
        let free_end_count = d
            .ends()
            .iter()
            .enumerate()
            .filter(|&(i, e)| comp[e.vertex] == c && !marked.contains(&Cell::End(i)))
            .count();
        let edge_count = (0..d.edges().len())
            .filter(|&i| alive_edge[i] && comp[d.edges()[i].tail] == c)
            .count();
        let cycle_rank = edge_count + 1 - vertices.len();
        let cycle_joints = if cycle_rank == 1 {
            Some(joints_on_cycle(d, &vertices, &alive_edge))
        } else {
            None
        };

        let kind = match (ground_count, free_end_count, cycle_rank) {
            (1, 0, 0) => Some(ComponentType::GroundTree),
            (0, 1, 0) => Some(ComponentType::FreeEndTree),
            (0, 0, 1) if cycle_joints.unwrap() % 2 == 1 => Some(ComponentType::OddCycle),
            _ => None,
        };
        match kind {
            Some(kind) => out.push(ClassifiedComponent { vertices, kind }),
            None => {
                return Err(ComponentDefect {
                    vertices,
                    ground_count,
                    free_end_count,
                    cycle_rank,
                    cycle_joints,
                })
            }
        }
    }
    Ok(out)
}

/// Number of joints on the unique cycle of a unicyclic component:
/// leaves are pruned repeatedly, the 2-core is the cycle.
fn joints_on_cycle(d: &FloorDiagram, vertices: &[usize], alive_edge: &[bool]) -> usize {
    let vset: BTreeSet<usize> = vertices.iter().copied().collect();
    let mut alive_vertex: BTreeSet<usize> = vset.clone();
    let mut alive: Vec<bool> = alive_edge.to_vec();
    for (i, e) in d.edges().iter().enumerate() {
        if !vset.contains(&e.tail) {
            alive[i] = false;
        }
    }
    loop {
        let mut removed = false;
        let leaves: Vec<usize> = alive_vertex
            .iter()
            .copied()
            .filter(|&v| {
                let deg = d
                    .edges()
                    .iter()
                    .enumerate()
                    .filter(|&(i, e)| alive[i] && (e.tail == v || e.head == v))
                    .count();
                deg <= 1
            })
            .collect();
        for v in leaves {
            alive_vertex.remove(&v);
            for (i, e) in d.edges().iter().enumerate() {
                if alive[i] && (e.tail == v || e.head == v) {
                    alive[i] = false;
                }
            }
            removed = true;
        }
        if !removed {
            break;
        }
    }
    alive_vertex
        .iter()
        .filter(|&&v| matches!(d.vertices()[v], VertexKind::Joint))
        .count()
}

/// One set of marked cells with its bookkeeping: the marks are the
/// upper floors, the fixed ends, and the chosen point-carrying
/// elevators; individual markings are the order-compatible labelings.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct MarkingClass {
    pub marked: Vec<Cell>,
    pub fixed_ends: Vec<usize>,
    /// Number of increasing labelings of the marked cells.
    pub extension_count: u64,
    /// Number of cycle components: the exponent of 2 in the
    /// multiplicity.
    pub cycle_components: usize,
}

/// A fully labeled marking: position i carries label i+1.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Marking {
    pub placement: Vec<Cell>,
    pub fixed_ends: Vec<usize>,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum MarkingError {
    #[error("profile mismatch: diagram has {diagram}, request asks {requested}")]
    ProfileMismatch {
        diagram: Partition,
        requested: Partition,
    },
}

/// Enumerates the valid marked-cell sets of `d` for fixed profile part
/// `fixed` and free part `free`, grouped by set.
///
/// Marks go on every upper floor and on `|fixed| + |free| + g - 1`
/// minus (number of upper floors) elevators, which must include one
/// end of matching weight per fixed part; after deleting the marked
/// elevators every component must be of an allowed type.
pub fn enumerate_marking_classes(
    d: &FloorDiagram,
    fixed: &Partition,
    free: &Partition,
) -> Result<Vec<MarkingClass>, MarkingError> {
    let requested = fixed.merge(free);
    let diagram_profile = d.tangency_profile();
    if requested != diagram_profile {
        return Err(MarkingError::ProfileMismatch {
            diagram: diagram_profile,
            requested,
        });
    }

    let mark_total = fixed.len() + free.len() + d.genus() - 1;
    let etage_cells: Vec<Cell> = (0..d.vertex_count())
        .filter(|&v| matches!(d.vertices()[v], VertexKind::Etage { .. }))
        .map(Cell::Vertex)
        .collect();
    let mut out = Vec::new();
    if mark_total < etage_cells.len() {
        return Ok(out);
    }
    let elevator_marks = mark_total - etage_cells.len();

    let mut elevators: Vec<Cell> = (0..d.edges().len()).map(Cell::Edge).collect();
    elevators.extend((0..d.ends().len()).map(Cell::End));

    for fixed_set in fixed_end_choices(d, fixed) {
        if fixed_set.len() > elevator_marks {
            continue;
        }
        let rest: Vec<Cell> = elevators
            .iter()
            .copied()
            .filter(|c| match c {
                Cell::End(i) => !fixed_set.contains(i),
                _ => true,
            })
            .collect();
        for extra in rest.iter().copied().combinations(elevator_marks - fixed_set.len()) {
            let mut marked: BTreeSet<Cell> = etage_cells.iter().copied().collect();
            marked.extend(fixed_set.iter().map(|&i| Cell::End(i)));
            marked.extend(extra.iter().copied());
            let classified = match classify_components(d, &marked) {
                Ok(c) => c,
                Err(_) => continue,
            };
            let cycle_components = classified
                .iter()
                .filter(|c| c.kind == ComponentType::OddCycle)
                .count();
            let marked_vec: Vec<Cell> = marked.iter().copied().collect();
            let extension_count = count_linear_extensions(d, &marked_vec);
            out.push(MarkingClass {
                marked: marked_vec,
                fixed_ends: fixed_set.clone(),
                extension_count,
                cycle_components,
            });
        }
    }
    out.sort_by(|a, b| (&a.marked, &a.fixed_ends).cmp(&(&b.marked, &b.fixed_ends)));
    Ok(out)
}

/// Fully labeled markings, one per increasing labeling of each class.
pub fn enumerate_markings(
    d: &FloorDiagram,
    fixed: &Partition,
    free: &Partition,
) -> Result<Vec<Marking>, MarkingError> {
    let classes = enumerate_marking_classes(d, fixed, free)?;
    let mut out = Vec::new();
    for class in classes {
        for placement in linear_extensions(d, &class.marked) {
            out.push(Marking {
                placement,
                fixed_ends: class.fixed_ends.clone(),
            });
        }
    }
    Ok(out)
}

/// All ways to pick one end of matching weight per fixed part; each
/// choice is a sorted set of end indices.
fn fixed_end_choices(d: &FloorDiagram, fixed: &Partition) -> Vec<Vec<usize>> {
    let mut values: Vec<(u32, usize)> = Vec::new();
    for &p in fixed.parts() {
        match values.last_mut() {
            Some((v, c)) if *v == p => *c += 1,
            _ => values.push((p, 1)),
        }
    }
    let mut choices: Vec<Vec<usize>> = vec![Vec::new()];
    for (value, needed) in values {
        let candidates: Vec<usize> = (0..d.ends().len())
            .filter(|&i| d.ends()[i].weight == value)
            .collect();
        let mut next = Vec::new();
        for sel in candidates.into_iter().combinations(needed) {
            for base in &choices {
                let mut s = base.clone();
                s.extend(sel.iter().copied());
                next.push(s);
            }
        }
        choices = next;
    }
    for c in &mut choices {
        c.sort_unstable();
    }
    choices.sort();
    choices
}

/// Strict precedence between cells: a path in the oriented graph leads
/// from `a` to `b`.
pub fn cell_precedes(d: &FloorDiagram, a: Cell, b: Cell) -> bool {
    if a == b {
        return false;
    }
    // walk the cell graph: vertex -> outgoing edges/ends, edge -> head
    let mut stack = vec![a];
    let mut seen: BTreeSet<Cell> = BTreeSet::new();
    while let Some(c) = stack.pop() {
        if !seen.insert(c) {
            continue;
        }
        if c == b {
            return true;
        }
        match c {
            Cell::Vertex(v) => {
                for i in d.out_edges(v) {
                    stack.push(Cell::Edge(i));
                }
                for i in d.ends_at(v) {
                    stack.push(Cell::End(i));
                }
            }
            Cell::Edge(i) => stack.push(Cell::Vertex(d.edges()[i].head)),
            Cell::End(_) => {}
        }
    }
    false
}

/// Number of linear extensions of the precedence order restricted to
/// `cells`, by dynamic programming over down-sets.
fn count_linear_extensions(d: &FloorDiagram, cells: &[Cell]) -> u64 {
    let n = cells.len();
    assert!(n <= 24, "marking label set too large");
    let mut prec = vec![0u32; n];
    for i in 0..n {
        for j in 0..n {
            if i != j && cell_precedes(d, cells[j], cells[i]) {
                prec[i] |= 1 << j;
            }
        }
    }
    let mut dp = vec![0u64; 1 << n];
    dp[0] = 1;
    for mask in 0..(1u32 << n) {
        if dp[mask as usize] == 0 {
            continue;
        }
        for i in 0..n {
            if mask & (1 << i) == 0 && (prec[i] & mask) == prec[i] {
                dp[(mask | (1 << i)) as usize] += dp[mask as usize];
            }
        }
    }
    dp[(1usize << n) - 1]
}

/// Materializes every increasing labeling of `cells`.
fn linear_extensions(d: &FloorDiagram, cells: &[Cell]) -> Vec<Vec<Cell>> {
    let n = cells.len();
    let mut prec = vec![0u32; n];
    for i in 0..n {
        for j in 0..n {
            if i != j && cell_precedes(d, cells[j], cells[i]) {
                prec[i] |= 1 << j;
            }
        }
    }
    let mut out = Vec::new();
    let mut current: Vec<Cell> = Vec::with_capacity(n);
    fn rec(
        cells: &[Cell],
        prec: &[u32],
        mask: u32,
        current: &mut Vec<Cell>,
        out: &mut Vec<Vec<Cell>>,
    ) {
        if current.len() == cells.len() {
            out.push(current.clone());
            return;
        }
        for i in 0..cells.len() {
            if mask & (1 << i) == 0 && (prec[i] & mask) == prec[i] {
                current.push(cells[i]);
                rec(cells, prec, mask | (1 << i), current, out);
                current.pop();
            }
        }
    }
    rec(cells, &prec, 0, &mut current, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{BoundedEdge, End};
    use crate::half_int::HalfInt;

    fn two_column() -> FloorDiagram {
        FloorDiagram::new(
            vec![
                VertexKind::Ground {
                    degree: HalfInt::HALF,
                },
                VertexKind::Etage { degree: 1 },
            ],
            vec![
                BoundedEdge {
                    tail: 0,
                    head: 1,
                    weight: 1,
                },
                BoundedEdge {
                    tail: 0,
                    head: 1,
                    weight: 1,
                },
            ],
            vec![End { vertex: 1, weight: 1 }, End { vertex: 1, weight: 1 }],
        )
        .unwrap()
    }

    fn bare_ground(end_count: usize) -> FloorDiagram {
        FloorDiagram::new(
            vec![VertexKind::Ground {
                degree: HalfInt::ONE,
            }],
            vec![],
            (0..end_count)
                .map(|_| End {
                    vertex: 0,
                    weight: 1,
                })
                .collect(),
        )
        .unwrap()
    }

    fn joint_chain(b: usize) -> FloorDiagram {
        let mut vertices = vec![VertexKind::Etage { degree: 1 }];
        let mut edges = Vec::new();
        let mut ends = Vec::new();
        for j in 0..b {
            vertices.push(VertexKind::Joint);
            edges.push(BoundedEdge {
                tail: j + 1,
                head: 0,
                weight: 1,
            });
            ends.push(End {
                vertex: j + 1,
                weight: 1,
            });
            ends.push(End {
                vertex: 0,
                weight: 1,
            });
        }
        FloorDiagram::new(vertices, edges, ends).unwrap()
    }

    #[test]
    fn precedence_follows_orientation() {
        let d = two_column();
        assert!(cell_precedes(&d, Cell::Vertex(0), Cell::Vertex(1)));
        assert!(cell_precedes(&d, Cell::Edge(0), Cell::End(1)));
        assert!(!cell_precedes(&d, Cell::Vertex(1), Cell::Vertex(0)));
        assert!(!cell_precedes(&d, Cell::Edge(0), Cell::Edge(1)));
        assert!(!cell_precedes(&d, Cell::End(0), Cell::End(1)));
    }

    #[test]
    fn two_column_marking_classes() {
        let d = two_column();
        let free: Partition = "1,1".parse().unwrap();
        let classes = enumerate_marking_classes(&d, &Partition::empty(), &free).unwrap();
        assert_eq!(classes.len(), 4);
        for class in &classes {
            assert_eq!(class.extension_count, 2);
            assert_eq!(class.cycle_components, 0);
            assert!(class.fixed_ends.is_empty());
            assert!(class.marked.contains(&Cell::Vertex(1)));
        }
        let maps = enumerate_markings(&d, &Partition::empty(), &free).unwrap();
        assert_eq!(maps.len(), 8);
        for m in &maps {
            // labels weakly follow the orientation
            for i in 0..m.placement.len() {
                for j in 0..i {
                    assert!(!cell_precedes(&d, m.placement[i], m.placement[j]));
                }
            }
        }
    }

    #[test]
    fn two_column_relative_markings() {
        let d = two_column();
        let fixed: Partition = "1".parse().unwrap();
        let free: Partition = "1".parse().unwrap();
        let classes = enumerate_marking_classes(&d, &fixed, &free).unwrap();
        // three valid sets per choice of the fixed end
        assert_eq!(classes.len(), 6);
        for class in &classes {
            assert_eq!(class.fixed_ends.len(), 1);
            let fixed_cell = Cell::End(class.fixed_ends[0]);
            assert!(class.marked.contains(&fixed_cell));
        }
        assert_eq!(
            classes.iter().filter(|c| c.fixed_ends == vec![0]).count(),
            3
        );
        let maps = enumerate_markings(&d, &fixed, &free).unwrap();
        assert_eq!(maps.len(), 12);
    }

    #[test]
    fn bare_ground_single_class() {
        for b2 in [2usize, 4] {
            let d = bare_ground(b2);
            let free = Partition::new(vec![1; b2]).unwrap();
            let classes = enumerate_marking_classes(&d, &Partition::empty(), &free).unwrap();
            assert_eq!(classes.len(), 1, "2b = {b2}");
            let class = &classes[0];
            // all ends marked, fully incomparable
            assert_eq!(class.marked.len(), b2);
            assert_eq!(class.extension_count, crate::arith::factorial(b2 as u64));
            assert_eq!(class.cycle_components, 0);
        }
    }

    #[test]
    fn joint_chain_markings() {
        let d = joint_chain(1);
        let free: Partition = "1,1".parse().unwrap();
        let classes = enumerate_marking_classes(&d, &Partition::empty(), &free).unwrap();
        // mark the floor plus one of: joint edge, joint end, floor end
        assert_eq!(classes.len(), 3);
        let total: u64 = classes.iter().map(|c| c.extension_count).sum();
        assert_eq!(total, 4);
        assert!(classes.iter().all(|c| c.cycle_components == 0));
    }

    #[test]
    fn odd_cycle_component_detected() {
        // joint feeding a floor through two parallel edges: one cycle
        // with one joint on it
        let d = FloorDiagram::new(
            vec![VertexKind::Etage { degree: 1 }, VertexKind::Joint],
            vec![
                BoundedEdge {
                    tail: 1,
                    head: 0,
                    weight: 1,
                },
                BoundedEdge {
                    tail: 1,
                    head: 0,
                    weight: 1,
                },
            ],
            vec![End {
                vertex: 0,
                weight: 2,
            }],
        )
        .unwrap();
        assert!(d.validate(crate::diagram::SurfaceKind::M0).is_ok());
        assert_eq!(d.genus(), 2);
        let marked: BTreeSet<Cell> = [Cell::Vertex(0), Cell::End(0)].into_iter().collect();
        let comps = classify_components(&d, &marked).unwrap();
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].kind, ComponentType::OddCycle);

        // cutting one parallel edge instead leaves a tree with no free
        // end and no ground: invalid
        let marked: BTreeSet<Cell> = [Cell::Vertex(0), Cell::Edge(0), Cell::End(0)]
            .into_iter()
            .collect();
        let defect = classify_components(&d, &marked).unwrap_err();
        assert_eq!(defect.cycle_rank, 0);
        assert_eq!(defect.free_end_count, 0);
        assert_eq!(defect.ground_count, 0);

        // full enumeration: marking either parallel edge leaves a
        // free-end tree, marking the end leaves the odd cycle
        let free: Partition = "2".parse().unwrap();
        let classes = enumerate_marking_classes(&d, &Partition::empty(), &free).unwrap();
        assert_eq!(classes.len(), 3);
        let cycles: Vec<usize> = classes.iter().map(|c| c.cycle_components).collect();
        assert_eq!(cycles, vec![0, 0, 1]);
        assert!(classes.iter().all(|c| c.extension_count == 1));
    }

    #[test]
    fn profile_mismatch_is_an_error() {
        let d = bare_ground(2);
        let bad: Partition = "2".parse().unwrap();
        assert!(matches!(
            enumerate_marking_classes(&d, &Partition::empty(), &bad),
            Err(MarkingError::ProfileMismatch { .. })
        ));
    }

    #[test]
    fn free_end_components_require_uniqueness() {
        let d = bare_ground(2);
        // marking only one end leaves the other free on the ground
        // component: defect (ground and free end together)
        let marked: BTreeSet<Cell> = [Cell::End(0)].into_iter().collect();
        let defect = classify_components(&d, &marked).unwrap_err();
        assert_eq!(defect.ground_count, 1);
        assert_eq!(defect.free_end_count, 1);
    }
}
