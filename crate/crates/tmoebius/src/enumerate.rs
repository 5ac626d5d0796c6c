use crate::canonical::{canonical_form, canonical_representative, canonicalize, CanonicalForm};
use crate::diagram::{BoundedEdge, End, FloorDiagram, HomologyClass, SurfaceKind, VertexKind};
use crate::half_int::HalfInt;
use crate::partition::Partition;
use std::collections::BTreeMap;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum EnumerateError {
    #[error("fiber coordinate {b} does not match profile norm {norm}")]
    ClassProfileMismatch { b: HalfInt, norm: u64 },
    #[error("section coordinate must be positive, got {a}")]
    NonPositiveClass { a: HalfInt },
}

/// Vertex kind with the degree stripped.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum ShapeKind {
    Ground,
    Etage,
    Joint,
}

/// A diagram without floor degrees: the combinatorial part shared by
/// all degree assignments.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WeightedShape {
    pub kinds: Vec<ShapeKind>,
    pub edges: Vec<BoundedEdge>,
    pub ends: Vec<End>,
}

impl WeightedShape {
    pub fn from_diagram(d: &FloorDiagram) -> Self {
        WeightedShape {
            kinds: d
                .vertices()
                .iter()
                .map(|v| match v {
                    VertexKind::Ground { .. } => ShapeKind::Ground,
                    VertexKind::Etage { .. } => ShapeKind::Etage,
                    VertexKind::Joint => ShapeKind::Joint,
                })
                .collect(),
            edges: d.edges().to_vec(),
            ends: d.ends().to_vec(),
        }
    }

    /// Concrete diagram with the given doubled degrees (joint entries
    /// ignored).
    pub fn with_degrees(&self, doubled: &[i64]) -> FloorDiagram {
        let vertices: Vec<VertexKind> = self
            .kinds
            .iter()
            .enumerate()
            .map(|(i, k)| match k {
                ShapeKind::Ground => VertexKind::Ground {
                    degree: HalfInt::from_doubled(doubled[i]),
                },
                ShapeKind::Etage => VertexKind::Etage {
                    degree: (doubled[i] / 2) as u32,
                },
                ShapeKind::Joint => VertexKind::Joint,
            })
            .collect();
        FloorDiagram::new(vertices, self.edges.clone(), self.ends.clone())
            .expect("shape structure is sound")
    }

    /// Diagram with unit placeholder degrees; markings and component
    /// classification do not read degrees.
    pub fn placeholder_diagram(&self) -> FloorDiagram {
        let doubled: Vec<i64> = self
            .kinds
            .iter()
            .map(|k| match k {
                ShapeKind::Ground => 1,
                ShapeKind::Etage => 2,
                ShapeKind::Joint => 0,
            })
            .collect();
        self.with_degrees(&doubled)
    }

    fn parts(&self) -> (Vec<Vec<i64>>, Vec<(usize, usize, i64)>, Vec<(usize, i64)>) {
        let colors: Vec<Vec<i64>> = self
            .kinds
            .iter()
            .map(|k| match k {
                ShapeKind::Ground => vec![0],
                ShapeKind::Etage => vec![1],
                ShapeKind::Joint => vec![2],
            })
            .collect();
        let edges = self
            .edges
            .iter()
            .map(|e| (e.tail, e.head, e.weight as i64))
            .collect();
        let ends = self.ends.iter().map(|e| (e.vertex, e.weight as i64)).collect();
        (colors, edges, ends)
    }

    pub fn canonical_key(&self) -> CanonicalForm {
        let (colors, edges, ends) = self.parts();
        CanonicalForm {
            key: canonicalize(&colors, &edges, &ends).key,
        }
    }

    /// Cell-level automorphism order of the degree-free object.
    pub fn aut_order(&self) -> u64 {
        let (colors, edges, ends) = self.parts();
        let o = canonicalize(&colors, &edges, &ends);
        o.vertex_aut_count * o.parallel_edge_factor * o.end_factor
    }

    pub fn grounds(&self) -> Vec<usize> {
        (0..self.kinds.len())
            .filter(|&v| self.kinds[v] == ShapeKind::Ground)
            .collect()
    }

    pub fn etages(&self) -> Vec<usize> {
        (0..self.kinds.len())
            .filter(|&v| self.kinds[v] == ShapeKind::Etage)
            .collect()
    }

    /// Sorted elevator weights at `v` (bounded both directions plus
    /// ends).
    pub fn elevator_weights_at(&self, v: usize) -> Vec<u32> {
        let mut ws: Vec<u32> = self
            .edges
            .iter()
            .filter(|e| e.tail == v || e.head == v)
            .map(|e| e.weight)
            .chain(self.ends.iter().filter(|e| e.vertex == v).map(|e| e.weight))
            .collect();
        ws.sort_unstable();
        ws
    }
}

/// Labeled intermediate: kinds, edge endpoints, and one host vertex
/// per profile part.
struct Candidate {
    kinds: Vec<ShapeKind>,
    edges: Vec<(usize, usize)>,
    hosts: Vec<usize>,
}

/// All valid diagrams on `surface` with the given genus, class, and
/// end-weight profile, one representative per isomorphism class, in
/// canonical order.
pub fn enumerate_diagrams(
    surface: SurfaceKind,
    genus: usize,
    class: HomologyClass,
    profile: &Partition,
) -> Result<Vec<FloorDiagram>, EnumerateError> {
    let norm = profile.norm();
    if class.b.doubled() != norm as i64 {
        return Err(EnumerateError::ClassProfileMismatch { b: class.b, norm });
    }
    if !class.a.is_positive() {
        return Err(EnumerateError::NonPositiveClass { a: class.a });
    }
    if profile.is_empty() {
        // every diagram carries at least one end
        return Ok(Vec::new());
    }
    let mut found: BTreeMap<CanonicalForm, FloorDiagram> = BTreeMap::new();
    let two_a = class.a.doubled();
    for cand in candidates(genus, profile) {
        let min_doubled: i64 = cand
            .kinds
            .iter()
            .map(|k| match k {
                ShapeKind::Ground => 1,
                ShapeKind::Etage => 2,
                ShapeKind::Joint => 0,
            })
            .sum();
        if min_doubled > two_a {
            continue;
        }
        for weights in solve_weights(&cand, profile, surface) {
            let ground_sums = ground_weight_sums(&cand, profile, &weights);
            for degrees in degree_assignments(&cand.kinds, &ground_sums, two_a, surface) {
                let d = build_diagram(&cand, profile, &weights, &degrees);
                debug_assert!(d.validate(surface).is_ok(), "enumerated diagram invalid");
                debug_assert_eq!(d.genus(), genus);
                let rep = canonical_representative(&d);
                found.entry(canonical_form(&rep)).or_insert(rep);
            }
        }
    }
    Ok(found.into_values().collect())
}

/// All degree-free shapes underlying valid diagrams of the given genus
/// and profile on `surface` (any class), in canonical order.
pub fn enumerate_weighted_shapes(
    surface: SurfaceKind,
    genus: usize,
    profile: &Partition,
) -> Vec<WeightedShape> {
    if profile.is_empty() {
        return Vec::new();
    }
    let mut found: BTreeMap<CanonicalForm, WeightedShape> = BTreeMap::new();
    for cand in candidates(genus, profile) {
        for weights in solve_weights(&cand, profile, surface) {
            let shape = build_shape(&cand, profile, &weights);
            found.entry(shape.canonical_key()).or_insert(shape);
        }
    }
    found.into_values().collect()
}

fn build_shape(cand: &Candidate, profile: &Partition, weights: &[u32]) -> WeightedShape {
    WeightedShape {
        kinds: cand.kinds.clone(),
        edges: cand
            .edges
            .iter()
            .zip(weights)
            .map(|(&(tail, head), &weight)| BoundedEdge { tail, head, weight })
            .collect(),
        ends: cand
            .hosts
            .iter()
            .zip(profile.parts())
            .map(|(&vertex, &weight)| End { vertex, weight })
            .collect(),
    }
}

fn build_diagram(
    cand: &Candidate,
    profile: &Partition,
    weights: &[u32],
    degrees: &[i64],
) -> FloorDiagram {
    build_shape(cand, profile, weights).with_degrees(degrees)
}

fn ground_weight_sums(cand: &Candidate, profile: &Partition, weights: &[u32]) -> Vec<i64> {
    (0..cand.kinds.len())
        .map(|v| {
            if cand.kinds[v] != ShapeKind::Ground {
                return 0;
            }
            let edge_sum: i64 = cand
                .edges
                .iter()
                .zip(weights)
                .filter(|(&(t, _), _)| t == v)
                .map(|(_, &w)| w as i64)
                .sum();
            let end_sum: i64 = cand
                .hosts
                .iter()
                .zip(profile.parts())
                .filter(|(&h, _)| h == v)
                .map(|(_, &w)| w as i64)
                .sum();
            edge_sum + end_sum
        })
        .collect()
}

/// Labeled candidates: every (floors, joints, edges, end-hosting)
/// layout compatible with the genus and the structural constraints.
fn candidates(genus: usize, profile: &Partition) -> Vec<Candidate> {
    let mut out = Vec::new();
    if genus == 0 {
        return out;
    }
    let n_parts = profile.len();
    let b_floor = (profile.norm() / 2) as usize;
    for n_f in 1..=genus {
        for n_g in 0..=n_f {
            let n_e = n_f - n_g;
            let joint_cap = b_floor.min(genus + n_parts.max(1) - 1);
            for n_j in 0..=joint_cap {
                let v_total = n_f + n_j;
                let e_bounded = genus + n_j - 1;
                // heads are upper floors only: no edges possible without them
                if n_e == 0 && e_bounded > 0 {
                    continue;
                }
                let kinds: Vec<ShapeKind> = (0..v_total)
                    .map(|v| {
                        if v < n_g {
                            ShapeKind::Ground
                        } else if v < n_f {
                            ShapeKind::Etage
                        } else {
                            ShapeKind::Joint
                        }
                    })
                    .collect();
                for hosts in host_assignments(profile, v_total) {
                    // each joint carries exactly two elevators and at
                    // least one bounded edge
                    let joint_ends: Vec<usize> = (n_f..v_total)
                        .map(|j| hosts.iter().filter(|&&h| h == j).count())
                        .collect();
                    if joint_ends.iter().any(|&c| c > 1) {
                        continue;
                    }
                    let demands: Vec<usize> = joint_ends.iter().map(|&c| 2 - c).collect();
                    let total_demand: usize = demands.iter().sum();
                    if total_demand > e_bounded {
                        continue;
                    }
                    let residual = e_bounded - total_demand;
                    for joint_edges in joint_edge_choices(n_g, n_f, &demands) {
                        for rest in residual_edge_choices(n_g, n_f, residual) {
                            let mut edges = joint_edges.clone();
                            edges.extend_from_slice(&rest);
                            if !skeleton_ok(&kinds, &edges, n_g, n_f) {
                                continue;
                            }
                            out.push(Candidate {
                                kinds: kinds.clone(),
                                edges,
                                hosts: hosts.clone(),
                            });
                        }
                    }
                }
            }
        }
    }
    out
}

/// One host vertex per part; equal parts are assigned as multisets to
/// avoid permuted repeats.
fn host_assignments(profile: &Partition, v_total: usize) -> Vec<Vec<usize>> {
    let mut groups: Vec<(u32, usize)> = Vec::new();
    for &p in profile.parts() {
        match groups.last_mut() {
            Some((v, c)) if *v == p => *c += 1,
            _ => groups.push((p, 1)),
        }
    }
    let mut acc: Vec<Vec<usize>> = vec![Vec::new()];
    for (_, count) in groups {
        let mut next = Vec::new();
        let mut pick = Vec::new();
        multisets(v_total, count, 0, &mut pick, &mut |sel| {
            for base in &acc {
                let mut h = base.clone();
                h.extend_from_slice(sel);
                next.push(h);
            }
        });
        acc = next;
    }
    acc
}

fn multisets(
    universe: usize,
    size: usize,
    start: usize,
    current: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]),
) {
    if current.len() == size {
        visit(current);
        return;
    }
    for v in start..universe {
        current.push(v);
        multisets(universe, size, v, current, visit);
        current.pop();
    }
}

/// Per-joint multisets of head floors, flattened to an edge list.
fn joint_edge_choices(n_g: usize, n_f: usize, demands: &[usize]) -> Vec<Vec<(usize, usize)>> {
    let heads: Vec<usize> = (n_g..n_f).collect();
    let mut acc: Vec<Vec<(usize, usize)>> = vec![Vec::new()];
    for (idx, &d) in demands.iter().enumerate() {
        let joint = n_f + idx;
        let mut next = Vec::new();
        let mut pick = Vec::new();
        multisets(heads.len(), d, 0, &mut pick, &mut |sel| {
            for base in &acc {
                let mut e = base.clone();
                e.extend(sel.iter().map(|&hi| (joint, heads[hi])));
                next.push(e);
            }
        });
        acc = next;
        if acc.is_empty() {
            return acc;
        }
    }
    acc
}

/// Multisets of `count` edges whose tails are floors and heads are
/// upper floors.
fn residual_edge_choices(n_g: usize, n_f: usize, count: usize) -> Vec<Vec<(usize, usize)>> {
    let mut pairs = Vec::new();
    for tail in 0..n_f {
        for head in n_g..n_f {
            if tail != head {
                pairs.push((tail, head));
            }
        }
    }
    let mut out = Vec::new();
    let mut pick = Vec::new();
    multisets(pairs.len(), count, 0, &mut pick, &mut |sel| {
        out.push(sel.iter().map(|&i| pairs[i]).collect());
    });
    out
}

fn skeleton_ok(kinds: &[ShapeKind], edges: &[(usize, usize)], n_g: usize, n_f: usize) -> bool {
    let v_total = kinds.len();
    if v_total > 1 {
        // every upper floor must be fed from above
        for v in n_g..n_f {
            if !edges.iter().any(|&(_, h)| h == v) {
                return false;
            }
        }
    }
    // acyclicity: only floor-to-floor edges can close a cycle
    let mut indeg = vec![0usize; v_total];
    for &(_, h) in edges {
        indeg[h] += 1;
    }
    let mut queue: Vec<usize> = (0..v_total).filter(|&v| indeg[v] == 0).collect();
    let mut seen = 0;
    while let Some(v) = queue.pop() {
        seen += 1;
        for &(t, h) in edges {
            if t == v {
                indeg[h] -= 1;
                if indeg[h] == 0 {
                    queue.push(h);
                }
            }
        }
    }
    if seen != v_total {
        return false;
    }
    // connectivity
    let mut visited = vec![false; v_total];
    visited[0] = true;
    let mut stack = vec![0usize];
    while let Some(v) = stack.pop() {
        for &(t, h) in edges {
            let other = if t == v {
                h
            } else if h == v {
                t
            } else {
                continue;
            };
            if !visited[other] {
                visited[other] = true;
                stack.push(other);
            }
        }
    }
    visited.into_iter().all(|b| b)
}

/// All positive weight assignments satisfying floor balance and joint
/// equality; on the even surface every ground elevator sum must be
/// even. Weights never exceed the profile norm.
fn solve_weights(cand: &Candidate, profile: &Partition, surface: SurfaceKind) -> Vec<Vec<u32>> {
    let cap = profile.norm().max(1) as i64;
    let n_edges = cand.edges.len();
    let mut solutions = Vec::new();
    let mut w: Vec<Option<i64>> = vec![None; n_edges];
    solve_rec(cand, profile, surface, cap, &mut w, &mut solutions);
    solutions.sort();
    solutions.dedup();
    solutions
}

fn solve_rec(
    cand: &Candidate,
    profile: &Partition,
    surface: SurfaceKind,
    cap: i64,
    w: &mut Vec<Option<i64>>,
    out: &mut Vec<Vec<u32>>,
) {
    let snapshot = w.clone();
    if !propagate(cand, profile, cap, w) {
        *w = snapshot;
        return;
    }
    match w.iter().position(|x| x.is_none()) {
        None => {
            if full_check(cand, profile, surface, w) {
                out.push(w.iter().map(|x| x.unwrap() as u32).collect());
            }
            *w = snapshot;
        }
        Some(idx) => {
            for value in 1..=cap {
                w[idx] = Some(value);
                solve_rec(cand, profile, surface, cap, w, out);
                w[idx] = None;
            }
            *w = snapshot;
        }
    }
}

/// Forced deductions: joint pairs share one weight; a floor with one
/// unknown incident edge has it determined by balance. Returns false
/// on contradiction.
fn propagate(cand: &Candidate, profile: &Partition, cap: i64, w: &mut [Option<i64>]) -> bool {
    let v_total = cand.kinds.len();
    loop {
        let mut progress = false;
        for v in 0..v_total {
            match cand.kinds[v] {
                ShapeKind::Joint => {
                    let edge_ids: Vec<usize> = (0..cand.edges.len())
                        .filter(|&i| cand.edges[i].0 == v)
                        .collect();
                    let end_weights: Vec<i64> = cand
                        .hosts
                        .iter()
                        .zip(profile.parts())
                        .filter(|(&h, _)| h == v)
                        .map(|(_, &p)| p as i64)
                        .collect();
                    let mut values: Vec<Option<i64>> = edge_ids.iter().map(|&i| w[i]).collect();
                    values.extend(end_weights.iter().map(|&x| Some(x)));
                    if values.len() != 2 {
                        return false;
                    }
                    match (values[0], values[1]) {
                        (Some(a), Some(b)) => {
                            if a != b {
                                return false;
                            }
                        }
                        (Some(a), None) => {
                            w[edge_ids[1]] = Some(a);
                            progress = true;
                        }
                        (None, Some(b)) => {
                            w[edge_ids[0]] = Some(b);
                            progress = true;
                        }
                        (None, None) => {}
                    }
                }
                ShapeKind::Etage => {
                    let mut known = 0i64;
                    let mut unknown: Option<(usize, i64)> = None;
                    let mut bad = false;
                    for (i, &(t, h)) in cand.edges.iter().enumerate() {
                        let sign = if h == v {
                            1
                        } else if t == v {
                            -1
                        } else {
                            continue;
                        };
                        match w[i] {
                            Some(x) => known += sign * x,
                            None => match unknown {
                                None => unknown = Some((i, sign)),
                                Some(_) => {
                                    bad = true;
                                    break;
                                }
                            },
                        }
                    }
                    if bad {
                        continue;
                    }
                    let end_sum: i64 = cand
                        .hosts
                        .iter()
                        .zip(profile.parts())
                        .filter(|(&h, _)| h == v)
                        .map(|(_, &p)| p as i64)
                        .sum();
                    known -= end_sum;
                    match unknown {
                        None => {
                            if known != 0 {
                                return false;
                            }
                        }
                        Some((i, sign)) => {
                            // known + sign * x = 0
                            let x = -known * sign;
                            if x < 1 || x > cap {
                                return false;
                            }
                            w[i] = Some(x);
                            progress = true;
                        }
                    }
                }
                ShapeKind::Ground => {}
            }
        }
        if !progress {
            return true;
        }
    }
}

fn full_check(
    cand: &Candidate,
    profile: &Partition,
    surface: SurfaceKind,
    w: &[Option<i64>],
) -> bool {
    let weights: Vec<u32> = w.iter().map(|x| x.unwrap() as u32).collect();
    if surface == SurfaceKind::M0 {
        for (v, kind) in cand.kinds.iter().enumerate() {
            if *kind == ShapeKind::Ground {
                let sums = ground_weight_sums(cand, profile, &weights);
                if sums[v] % 2 != 0 {
                    return false;
                }
            }
        }
    }
    true
}

/// Doubled floor degrees summing to the doubled section coordinate:
/// upper floors positive even, grounds at least one, matching the
/// elevator parity on the odd surface.
pub(crate) fn degree_assignments(
    kinds: &[ShapeKind],
    ground_sums: &[i64],
    total_doubled: i64,
    surface: SurfaceKind,
) -> Vec<Vec<i64>> {
    let floors: Vec<usize> = (0..kinds.len())
        .filter(|&v| kinds[v] != ShapeKind::Joint)
        .collect();
    let mut out = Vec::new();
    let mut current = vec![0i64; kinds.len()];
    fn rec(
        floors: &[usize],
        idx: usize,
        remaining: i64,
        kinds: &[ShapeKind],
        ground_sums: &[i64],
        surface: SurfaceKind,
        current: &mut Vec<i64>,
        out: &mut Vec<Vec<i64>>,
    ) {
        if idx == floors.len() {
            if remaining == 0 {
                out.push(current.clone());
            }
            return;
        }
        let v = floors[idx];
        let min_rest: i64 = floors[idx + 1..]
            .iter()
            .map(|&u| if kinds[u] == ShapeKind::Etage { 2 } else { 1 })
            .sum();
        let max_here = remaining - min_rest;
        match kinds[v] {
            ShapeKind::Etage => {
                let mut d = 2;
                while d <= max_here {
                    current[v] = d;
                    rec(floors, idx + 1, remaining - d, kinds, ground_sums, surface, current, out);
                    d += 2;
                }
            }
            ShapeKind::Ground => {
                let mut d = match surface {
                    SurfaceKind::M0 => 1,
                    SurfaceKind::M1 => {
                        let parity = (ground_sums[v] % 2 + 2) % 2;
                        if parity == 0 {
                            2
                        } else {
                            1
                        }
                    }
                };
                let step = match surface {
                    SurfaceKind::M0 => 1,
                    SurfaceKind::M1 => 2,
                };
                while d <= max_here {
                    current[v] = d;
                    rec(floors, idx + 1, remaining - d, kinds, ground_sums, surface, current, out);
                    d += step;
                }
            }
            ShapeKind::Joint => unreachable!(),
        }
        current[v] = 0;
    }
    rec(
        &floors,
        0,
        total_doubled,
        kinds,
        ground_sums,
        surface,
        &mut current,
        &mut out,
    );
    out
}
