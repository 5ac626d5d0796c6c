use crate::arith::factorial;
use crate::diagram::{BoundedEdge, End, FloorDiagram, VertexKind};
use std::collections::BTreeMap;

/// Relabeling-invariant key for a vertex-colored weighted multigraph
/// with pendant ends. Equal keys mean isomorphic objects.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CanonicalForm {
    pub key: Vec<i64>,
}

pub(crate) struct CanonicalOutcome {
    pub key: Vec<i64>,
    /// canonical position -> original vertex index
    pub order: Vec<usize>,
    /// automorphisms acting on vertices
    pub vertex_aut_count: u64,
    /// permutations of indistinguishable parallel edges
    pub parallel_edge_factor: u64,
    /// permutations of indistinguishable ends at one vertex
    pub end_factor: u64,
}

/// Canonicalizes a directed weighted multigraph whose vertices carry
/// arbitrary color tokens and whose ends are pendant weighted stubs.
///
/// Color classes are refined by the weighted neighborhood until
/// stable; the canonical order is the encoding-minimal ordering among
/// all within-class permutations, which also yields the automorphism
/// count by orbit counting.
pub(crate) fn canonicalize(
    colors: &[Vec<i64>],
    edges: &[(usize, usize, i64)],
    ends: &[(usize, i64)],
) -> CanonicalOutcome {
    let n = colors.len();
    assert!(n > 0);

    // iterative refinement; color ids stay canonical because each round
    // re-indexes by sorted composite key
    let mut color_ids: Vec<i64> = assign_ids(colors.iter().cloned().collect());
    loop {
        let mut composite: Vec<Vec<i64>> = (0..n).map(|v| vec![color_ids[v]]).collect();
        for v in 0..n {
            let mut out: Vec<(i64, i64)> = edges
                .iter()
                .filter(|&&(t, _, _)| t == v)
                .map(|&(_, h, w)| (w, color_ids[h]))
                .collect();
            out.sort_unstable();
            let mut inc: Vec<(i64, i64)> = edges
                .iter()
                .filter(|&&(_, h, _)| h == v)
                .map(|&(t, _, w)| (w, color_ids[t]))
                .collect();
            inc.sort_unstable();
            let mut endw: Vec<i64> = ends
                .iter()
                .filter(|&&(t, _)| t == v)
                .map(|&(_, w)| w)
                .collect();
            endw.sort_unstable();
            composite[v].push(out.len() as i64);
            for (w, c) in out {
                composite[v].push(w);
                composite[v].push(c);
            }
            composite[v].push(inc.len() as i64);
            for (w, c) in inc {
                composite[v].push(w);
                composite[v].push(c);
            }
            composite[v].push(endw.len() as i64);
            composite[v].extend(endw);
        }
        let new_ids = assign_ids(composite);
        if new_ids == color_ids {
            break;
        }
        color_ids = new_ids;
    }

    // vertices grouped into classes by refined color
    let mut classes: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for v in 0..n {
        classes.entry(color_ids[v]).or_default().push(v);
    }
    let class_list: Vec<Vec<usize>> = classes.into_values().collect();

    let mut best: Option<(Vec<i64>, Vec<usize>)> = None;
    let mut best_count = 0u64;
    let mut order = Vec::with_capacity(n);
    enumerate_orders(&class_list, 0, &mut order, &mut |order: &[usize]| {
        let enc = encode(order, colors, &color_ids, edges, ends);
        match &best {
            Some((bk, _)) => {
                if enc < *bk {
                    best = Some((enc, order.to_vec()));
                    best_count = 1;
                } else if enc == *bk {
                    best_count += 1;
                }
            }
            None => {
                best = Some((enc, order.to_vec()));
                best_count = 1;
            }
        }
    });
    let (key, order) = best.expect("at least one ordering");

    let mut parallel: BTreeMap<(usize, usize, i64), u64> = BTreeMap::new();
    for &e in edges {
        *parallel.entry(e).or_insert(0) += 1;
    }
    let parallel_edge_factor = parallel.values().map(|&c| factorial(c)).product();
    let mut end_classes: BTreeMap<(usize, i64), u64> = BTreeMap::new();
    for &e in ends {
        *end_classes.entry(e).or_insert(0) += 1;
    }
    let end_factor = end_classes.values().map(|&c| factorial(c)).product();

    CanonicalOutcome {
        key,
        order,
        vertex_aut_count: best_count,
        parallel_edge_factor,
        end_factor,
    }
}

/// Dense canonical ids: tokens sorted, index by rank.
fn assign_ids(tokens: Vec<Vec<i64>>) -> Vec<i64> {
    let mut sorted: Vec<Vec<i64>> = tokens.clone();
    sorted.sort();
    sorted.dedup();
    tokens
        .iter()
        .map(|t| sorted.binary_search(t).unwrap() as i64)
        .collect()
}

fn enumerate_orders(
    classes: &[Vec<usize>],
    class_idx: usize,
    order: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]),
) {
    if class_idx == classes.len() {
        visit(order);
        return;
    }
    permute(&classes[class_idx], &mut Vec::new(), &mut vec![false; classes[class_idx].len()], &mut |perm| {
        let len_before = order.len();
        order.extend_from_slice(perm);
        enumerate_orders(classes, class_idx + 1, order, visit);
        order.truncate(len_before);
    });
}

fn permute(
    items: &[usize],
    current: &mut Vec<usize>,
    used: &mut Vec<bool>,
    visit: &mut dyn FnMut(&[usize]),
) {
    if current.len() == items.len() {
        visit(current);
        return;
    }
    for i in 0..items.len() {
        if used[i] {
            continue;
        }
        used[i] = true;
        current.push(items[i]);
        permute(items, current, used, visit);
        current.pop();
        used[i] = false;
    }
}

fn encode(
    order: &[usize],
    colors: &[Vec<i64>],
    refined: &[i64],
    edges: &[(usize, usize, i64)],
    ends: &[(usize, i64)],
) -> Vec<i64> {
    let n = order.len();
    let mut pos = vec![0usize; n];
    for (p, &v) in order.iter().enumerate() {
        pos[v] = p;
    }
    let mut enc: Vec<i64> = vec![n as i64];
    for &v in order {
        enc.push(-1);
        enc.extend(&colors[v]);
        enc.push(refined[v]);
    }
    let mut e: Vec<(usize, usize, i64)> = edges
        .iter()
        .map(|&(t, h, w)| (pos[t], pos[h], w))
        .collect();
    e.sort_unstable();
    enc.push(-2);
    for (t, h, w) in e {
        enc.push(t as i64);
        enc.push(h as i64);
        enc.push(w);
    }
    let mut s: Vec<(usize, i64)> = ends.iter().map(|&(v, w)| (pos[v], w)).collect();
    s.sort_unstable();
    enc.push(-3);
    for (v, w) in s {
        enc.push(v as i64);
        enc.push(w);
    }
    enc
}

fn diagram_parts(d: &FloorDiagram) -> (Vec<Vec<i64>>, Vec<(usize, usize, i64)>, Vec<(usize, i64)>) {
    let colors: Vec<Vec<i64>> = d
        .vertices()
        .iter()
        .map(|v| match v {
            VertexKind::Ground { degree } => vec![0, degree.doubled()],
            VertexKind::Etage { degree } => vec![1, *degree as i64],
            VertexKind::Joint => vec![2, 0],
        })
        .collect();
    let edges: Vec<(usize, usize, i64)> = d
        .edges()
        .iter()
        .map(|e| (e.tail, e.head, e.weight as i64))
        .collect();
    let ends: Vec<(usize, i64)> = d
        .ends()
        .iter()
        .map(|e| (e.vertex, e.weight as i64))
        .collect();
    (colors, edges, ends)
}

/// Isomorphism-invariant key of a diagram.
pub fn canonical_form(d: &FloorDiagram) -> CanonicalForm {
    let (colors, edges, ends) = diagram_parts(d);
    CanonicalForm {
        key: canonicalize(&colors, &edges, &ends).key,
    }
}

/// The same diagram relabeled into canonical vertex order, with edges
/// and ends sorted; isomorphic diagrams map to identical values.
pub fn canonical_representative(d: &FloorDiagram) -> FloorDiagram {
    let (colors, edges, ends) = diagram_parts(d);
    let outcome = canonicalize(&colors, &edges, &ends);
    let mut pos = vec![0usize; d.vertex_count()];
    for (p, &v) in outcome.order.iter().enumerate() {
        pos[v] = p;
    }
    let vertices: Vec<VertexKind> = outcome.order.iter().map(|&v| d.vertices()[v]).collect();
    let mut new_edges: Vec<BoundedEdge> = d
        .edges()
        .iter()
        .map(|e| BoundedEdge {
            tail: pos[e.tail],
            head: pos[e.head],
            weight: e.weight,
        })
        .collect();
    new_edges.sort_unstable();
    let mut new_ends: Vec<End> = d
        .ends()
        .iter()
        .map(|e| End {
            vertex: pos[e.vertex],
            weight: e.weight,
        })
        .collect();
    new_ends.sort_unstable();
    FloorDiagram::new(vertices, new_edges, new_ends).expect("relabeling preserves structure")
}

/// Order of the automorphism group acting on cells: graph symmetries
/// together with permutations of parallel elevators and of equal ends.
pub fn aut_order(d: &FloorDiagram) -> u64 {
    let (colors, edges, ends) = diagram_parts(d);
    let outcome = canonicalize(&colors, &edges, &ends);
    outcome.vertex_aut_count * outcome.parallel_edge_factor * outcome.end_factor
}

#[cfg(test)]
mod tests {
    use super::*;
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
            (0..end_count).map(|_| End { vertex: 0, weight: 1 }).collect(),
        )
        .unwrap()
    }

    /// Upper floor of degree `a` fed by `b` joints, each joint with an
    /// extra end; `b` more ends on the floor.
    fn joint_chain(a: u32, b: usize) -> FloorDiagram {
        let mut vertices = vec![VertexKind::Etage { degree: a }];
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
            ends.push(End { vertex: 0, weight: 1 });
        }
        FloorDiagram::new(vertices, edges, ends).unwrap()
    }

    #[test]
    fn automorphism_orders_of_reference_diagrams() {
        assert_eq!(aut_order(&two_column()), 4);
        assert_eq!(aut_order(&bare_ground(2)), 2);
        assert_eq!(aut_order(&bare_ground(4)), 24);
        assert_eq!(aut_order(&joint_chain(1, 1)), 1);
        assert_eq!(aut_order(&joint_chain(1, 2)), 4);
        assert_eq!(aut_order(&joint_chain(1, 3)), 36);
    }

    #[test]
    fn relabeling_does_not_change_key_or_aut() {
        let d = FloorDiagram::new(
            vec![
                VertexKind::Ground {
                    degree: HalfInt::HALF,
                },
                VertexKind::Etage { degree: 1 },
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
                    head: 2,
                    weight: 1,
                },
                BoundedEdge {
                    tail: 1,
                    head: 2,
                    weight: 2,
                },
            ],
            vec![End { vertex: 1, weight: 3 }, End { vertex: 2, weight: 3 }],
        )
        .unwrap();
        // relabel 0->2, 1->0, 2->1
        let relabeled = FloorDiagram::new(
            vec![
                VertexKind::Etage { degree: 1 },
                VertexKind::Etage { degree: 1 },
                VertexKind::Ground {
                    degree: HalfInt::HALF,
                },
            ],
            vec![
                BoundedEdge {
                    tail: 2,
                    head: 0,
                    weight: 1,
                },
                BoundedEdge {
                    tail: 2,
                    head: 1,
                    weight: 1,
                },
                BoundedEdge {
                    tail: 0,
                    head: 1,
                    weight: 2,
                },
            ],
            vec![End { vertex: 0, weight: 3 }, End { vertex: 1, weight: 3 }],
        )
        .unwrap();
        assert_eq!(canonical_form(&d), canonical_form(&relabeled));
        assert_eq!(aut_order(&d), aut_order(&relabeled));
        assert_eq!(
            canonical_representative(&d),
            canonical_representative(&relabeled)
        );
    }

    #[test]
    fn different_weights_give_different_keys() {
        let mut ends = vec![End { vertex: 0, weight: 1 }, End { vertex: 0, weight: 1 }];
        let d1 = FloorDiagram::new(vec![VertexKind::Ground { degree: HalfInt::ONE }], vec![], ends.clone()).unwrap();
        ends[1].weight = 2;
        let d2 = FloorDiagram::new(vec![VertexKind::Ground { degree: HalfInt::ONE }], vec![], ends).unwrap();
        assert_ne!(canonical_form(&d1), canonical_form(&d2));
    }

    #[test]
    fn canonical_representative_is_idempotent() {
        for d in [two_column(), joint_chain(2, 2), bare_ground(3)] {
            let c = canonical_representative(&d);
            assert_eq!(canonical_representative(&c), c);
            assert_eq!(canonical_form(&c), canonical_form(&d));
        }
    }

    #[test]
    fn asymmetric_diagram_has_trivial_group() {
        // ground -> floor with distinct weights everywhere
        let d = FloorDiagram::new(
            vec![
                VertexKind::Ground {
                    degree: HalfInt::ONE,
                },
                VertexKind::Etage { degree: 1 },
            ],
            vec![BoundedEdge {
                tail: 0,
                head: 1,
                weight: 2,
            }],
            vec![End { vertex: 1, weight: 2 }, End { vertex: 0, weight: 2 }],
        )
        .unwrap();
        assert_eq!(aut_order(&d), 1);
    }
}
