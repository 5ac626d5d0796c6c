//! Weight assignments of a shape viewed through linear algebra: the
//! extended incidence matrix whose solutions are the admissible edge
//! weights, exact solution counting with monomial multiplicities,
//! principal-minor structure of the matrix, and exact polynomial or
//! parity-split fits of the counts along rays of boundary data.

use crate::arith::{sigma1, sigma1_tilde};
use crate::canonical::canonicalize;
use crate::diagram::{BoundedEdge, End, FloorDiagram, SurfaceKind, VertexKind};
use crate::enumerate::{enumerate_weighted_shapes, ShapeKind, WeightedShape};
use crate::exact::{
    integer_determinant, rat, rat_big, smith_normal_diagonal, BigInt, BigRational,
};
use crate::half_int::HalfInt;
use crate::marking::{enumerate_marking_classes, Cell, MarkingError};
use crate::multiplicity::{invariant, Convention, InvariantError};
use crate::partition::Partition;
use itertools::Itertools;
use num_traits::{Signed, Zero};
use std::collections::BTreeSet;

/// A diagram stripped of its edge weights, end weights, and floor
/// degrees: the combinatorial frame whose weightings are counted.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BareShape {
    pub kinds: Vec<ShapeKind>,
    /// oriented bounded edges as (tail, head)
    pub edges: Vec<(usize, usize)>,
    /// vertex carrying each end
    pub ends: Vec<usize>,
}

impl BareShape {
    pub fn from_shape(shape: &WeightedShape) -> Self {
        BareShape {
            kinds: shape.kinds.clone(),
            edges: shape.edges.iter().map(|e| (e.tail, e.head)).collect(),
            ends: shape.ends.iter().map(|e| e.vertex).collect(),
        }
    }

    fn kind_token(kind: ShapeKind) -> i64 {
        match kind {
            ShapeKind::Ground => 0,
            ShapeKind::Etage => 1,
            ShapeKind::Joint => 2,
        }
    }

    fn zero_weight_parts(&self) -> (Vec<(usize, usize, i64)>, Vec<(usize, i64)>) {
        (
            self.edges.iter().map(|&(t, h)| (t, h, 0)).collect(),
            self.ends.iter().map(|&v| (v, 0)).collect(),
        )
    }

    pub fn canonical_key(&self) -> Vec<i64> {
        let colors: Vec<Vec<i64>> = self
            .kinds
            .iter()
            .map(|&k| vec![Self::kind_token(k)])
            .collect();
        let (edges, ends) = self.zero_weight_parts();
        canonicalize(&colors, &edges, &ends).key
    }

    /// Automorphisms of the degree-assigned shape acting on vertices,
    /// on parallel bare edges, and on bare ends at a common vertex.
    pub fn aut_order_with_degrees(&self, doubled: &[i64]) -> u64 {
        let colors: Vec<Vec<i64>> = self
            .kinds
            .iter()
            .zip(doubled)
            .map(|(&k, &d)| vec![Self::kind_token(k), d])
            .collect();
        let (edges, ends) = self.zero_weight_parts();
        let outcome = canonicalize(&colors, &edges, &ends);
        outcome.vertex_aut_count * outcome.parallel_edge_factor * outcome.end_factor
    }

    /// Number of elevators at a vertex, bounded edges and ends alike.
    pub fn valence(&self, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(t, h)| t == v || h == v)
            .count()
            + self.ends.iter().filter(|&&w| w == v).count()
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
}

/// Meaning of one column of the extended matrix.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ColumnKind {
    /// bounded edge of the shape, weight at least one
    Interior(usize),
    /// an end turned into an edge toward its own boundary vertex
    EndEdge(usize),
    /// auxiliary nonnegative edge absorbing the parity at a ground,
    /// with matrix coefficient two
    GroundEdge(usize),
}

/// Incidence matrix of the shape extended by one boundary vertex per
/// end and one auxiliary edge per ground floor. Rows are the shape
/// vertices followed by the boundary vertices; a weighting is a
/// nonnegative integer solution of `matrix * w = d` whose interior
/// and end entries are positive.
#[derive(Clone, Debug)]
pub struct ExtendedGraph {
    pub shape: BareShape,
    pub columns: Vec<ColumnKind>,
    pub matrix: Vec<Vec<i64>>,
    /// row index of the boundary vertex of each end
    pub end_rows: Vec<usize>,
}

pub fn build_extended(shape: &BareShape) -> ExtendedGraph {
    let base = shape.kinds.len();
    let rows = base + shape.ends.len();
    let mut columns = Vec::new();
    columns.extend((0..shape.edges.len()).map(ColumnKind::Interior));
    columns.extend((0..shape.ends.len()).map(ColumnKind::EndEdge));
    columns.extend(shape.grounds().into_iter().map(ColumnKind::GroundEdge));
    let mut matrix = vec![vec![0i64; columns.len()]; rows];

    for (c, &col) in columns.iter().enumerate() {
        match col {
            ColumnKind::Interior(k) => {
                let (t, h) = shape.edges[k];
                if shape.kinds[t] != ShapeKind::Joint {
                    matrix[t][c] += 1;
                }
                if shape.kinds[h] != ShapeKind::Joint {
                    matrix[h][c] -= 1;
                }
            }
            ColumnKind::EndEdge(k) => {
                let v = shape.ends[k];
                if shape.kinds[v] != ShapeKind::Joint {
                    matrix[v][c] += 1;
                }
                matrix[base + k][c] = 1;
            }
            ColumnKind::GroundEdge(g) => {
                matrix[g][c] = -2;
            }
        }
    }

    // a joint row states that its two outgoing elevators carry equal
    // weight
    for j in 0..base {
        if shape.kinds[j] != ShapeKind::Joint {
            continue;
        }
        let mut out = Vec::new();
        for (c, &col) in columns.iter().enumerate() {
            match col {
                ColumnKind::Interior(k) if shape.edges[k].0 == j => out.push(c),
                ColumnKind::EndEdge(k) if shape.ends[k] == j => out.push(c),
                _ => {}
            }
        }
        assert_eq!(out.len(), 2, "a joint carries exactly two elevators");
        matrix[j][out[0]] = 1;
        matrix[j][out[1]] -= 1;
    }

    ExtendedGraph {
        shape: shape.clone(),
        columns,
        matrix,
        end_rows: (0..shape.ends.len()).map(|k| base + k).collect(),
    }
}

/// Right-hand side for given end values: zero at upper floors and
/// joints, the degree parity at grounds, the boundary data at ends.
pub fn divergence_vector(
    eg: &ExtendedGraph,
    delta: i64,
    ground_doubled: &[i64],
    end_values: &[i64],
) -> Vec<i64> {
    let mut d = vec![0i64; eg.matrix.len()];
    for (g, &dd) in eg.shape.grounds().iter().zip(ground_doubled) {
        d[*g] = (delta * dd).rem_euclid(2);
    }
    for (k, &row) in eg.end_rows.iter().enumerate() {
        d[row] = end_values[k];
    }
    d
}

/// All solutions of the extended system, in lexicographic order of
/// the interior weights. Interior and end entries are at least one,
/// ground entries at least zero.
pub fn weightings(eg: &ExtendedGraph, d: &[i64]) -> Vec<Vec<i64>> {
    let cols = eg.columns.len();
    let mut w: Vec<Option<i64>> = vec![None; cols];
    let mut bound = 0i64;
    for (k, &row) in eg.end_rows.iter().enumerate() {
        let value = d[row];
        if value < 1 {
            return Vec::new();
        }
        let col = eg
            .columns
            .iter()
            .position(|&c| c == ColumnKind::EndEdge(k))
            .unwrap();
        w[col] = Some(value);
        bound += value;
    }
    let hard_rows: Vec<usize> = (0..eg.shape.kinds.len())
        .filter(|&v| eg.shape.kinds[v] != ShapeKind::Ground)
        .collect();
    let mut out = Vec::new();
    search(eg, d, &hard_rows, bound, &mut w, &mut out);
    out
}

fn search(
    eg: &ExtendedGraph,
    d: &[i64],
    hard_rows: &[usize],
    bound: i64,
    w: &mut Vec<Option<i64>>,
    out: &mut Vec<Vec<i64>>,
) {
    let mut trail = Vec::new();
    let feasible = loop {
        let mut progressed = false;
        let mut ok = true;
        for &r in hard_rows {
            let mut partial = 0i64;
            let mut unknown: Option<(usize, i64)> = None;
            let mut unknown_count = 0;
            for c in 0..eg.columns.len() {
                let coeff = eg.matrix[r][c];
                if coeff == 0 {
                    continue;
                }
                match w[c] {
                    Some(v) => partial += coeff * v,
                    None => {
                        unknown_count += 1;
                        unknown = Some((c, coeff));
                    }
                }
            }
            match unknown_count {
                0 => {
                    if partial != d[r] {
                        ok = false;
                        break;
                    }
                }
                1 => {
                    let (c, coeff) = unknown.unwrap();
                    let value = (d[r] - partial) / coeff;
                    if (d[r] - partial) % coeff != 0 || value < 1 || value > bound {
                        ok = false;
                        break;
                    }
                    w[c] = Some(value);
                    trail.push(c);
                    progressed = true;
                }
                _ => {}
            }
        }
        if !ok {
            break false;
        }
        if !progressed {
            break true;
        }
    };

    if feasible {
        let branch = (0..eg.columns.len())
            .find(|&c| matches!(eg.columns[c], ColumnKind::Interior(_)) && w[c].is_none());
        match branch {
            Some(c) => {
                for value in 1..=bound {
                    w[c] = Some(value);
                    search(eg, d, hard_rows, bound, w, out);
                }
                w[c] = None;
            }
            None => complete_grounds(eg, d, w, out),
        }
    }
    for c in trail {
        w[c] = None;
    }
}

fn complete_grounds(
    eg: &ExtendedGraph,
    d: &[i64],
    w: &mut [Option<i64>],
    out: &mut Vec<Vec<i64>>,
) {
    let mut ground_values = Vec::new();
    for (c, &col) in eg.columns.iter().enumerate() {
        let ColumnKind::GroundEdge(g) = col else {
            continue;
        };
        let mut s = 0i64;
        for c2 in 0..eg.columns.len() {
            if c2 != c && eg.matrix[g][c2] != 0 {
                s += eg.matrix[g][c2] * w[c2].expect("non-ground entries are set");
            }
        }
        let excess = s - d[g];
        if excess < 0 || excess % 2 != 0 {
            return;
        }
        ground_values.push((c, excess / 2));
    }
    for &(c, v) in &ground_values {
        w[c] = Some(v);
    }
    out.push(w.iter().map(|x| x.unwrap()).collect());
    for &(c, _) in &ground_values {
        w[c] = None;
    }
}

fn monomial(solution: &[i64], exponents: &[u32]) -> BigInt {
    let mut m = BigInt::from(1);
    for (v, &e) in solution.iter().zip(exponents) {
        if e > 0 {
            m *= BigInt::from(*v).pow(e);
        }
    }
    m
}

/// Sum of the exponent monomial over all weightings.
pub fn count_weightings(eg: &ExtendedGraph, d: &[i64], exponents: &[u32]) -> BigRational {
    let mut total = BigInt::zero();
    for solution in weightings(eg, d) {
        total += monomial(&solution, exponents);
    }
    rat_big(total)
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ComponentKind {
    /// tree containing exactly one ground edge
    GroundEdgeTree,
    /// one cycle, no ground edge; parity of the joints on the cycle
    /// decides the torsion
    JointCycle { joints: usize },
    Irregular,
}

#[derive(Clone, Debug)]
pub struct ComponentReport {
    pub vertices: Vec<usize>,
    pub columns: Vec<usize>,
    pub kind: ComponentKind,
    pub determinant: Option<BigInt>,
}

#[derive(Clone, Debug)]
pub struct MinorReport {
    pub columns: Vec<usize>,
    pub determinant: BigInt,
    pub components: Vec<ComponentReport>,
    pub classification_ok: bool,
    /// absolute values above one on the integer normal form diagonal
    pub torsion: Vec<BigInt>,
    pub torsion_matches: bool,
}

/// Examines every square column selection of the extended matrix:
/// its determinant, the subgraph structure of the selected edges, and
/// the cokernel against the order-two prediction per component.
pub fn minor_analysis(eg: &ExtendedGraph) -> Vec<MinorReport> {
    let rows = eg.matrix.len();
    let mut reports = Vec::new();
    if eg.columns.len() < rows {
        return reports;
    }
    for subset in (0..eg.columns.len()).combinations(rows) {
        let sub: Vec<Vec<BigInt>> = (0..rows)
            .map(|r| subset.iter().map(|&c| BigInt::from(eg.matrix[r][c])).collect())
            .collect();
        let det = integer_determinant(&sub);
        if det.is_zero() {
            reports.push(MinorReport {
                columns: subset,
                determinant: det,
                components: Vec::new(),
                classification_ok: true,
                torsion: Vec::new(),
                torsion_matches: true,
            });
            continue;
        }
        let components = classify_subgraph(eg, &subset);
        let classification_ok = components
            .iter()
            .all(|c| !matches!(c.kind, ComponentKind::Irregular));
        let torsion: Vec<BigInt> = smith_normal_diagonal(&sub)
            .into_iter()
            .map(|x| x.abs())
            .filter(|x| x > &BigInt::from(1))
            .collect();
        let predicted = components
            .iter()
            .filter(|c| match c.kind {
                ComponentKind::GroundEdgeTree => true,
                ComponentKind::JointCycle { joints } => joints % 2 == 1,
                ComponentKind::Irregular => false,
            })
            .count();
        let torsion_matches = classification_ok
            && torsion.len() == predicted
            && torsion.iter().all(|x| x == &BigInt::from(2));
        reports.push(MinorReport {
            columns: subset,
            determinant: det,
            components,
            classification_ok,
            torsion,
            torsion_matches,
        });
    }
    reports
}

fn column_vertices(eg: &ExtendedGraph, c: usize) -> Vec<usize> {
    match eg.columns[c] {
        ColumnKind::Interior(k) => {
            let (t, h) = eg.shape.edges[k];
            vec![t, h]
        }
        ColumnKind::EndEdge(k) => vec![eg.shape.ends[k], eg.end_rows[k]],
        ColumnKind::GroundEdge(g) => vec![g],
    }
}

fn classify_subgraph(eg: &ExtendedGraph, subset: &[usize]) -> Vec<ComponentReport> {
    let rows = eg.matrix.len();
    let mut parent: Vec<usize> = (0..rows).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let root = find(parent, parent[x]);
            parent[x] = root;
        }
        parent[x]
    }
    for &c in subset {
        let vs = column_vertices(eg, c);
        if vs.len() == 2 {
            let a = find(&mut parent, vs[0]);
            let b = find(&mut parent, vs[1]);
            parent[a] = b;
        }
    }
    let mut roots: Vec<usize> = (0..rows).map(|v| find(&mut parent, v)).collect();
    let mut seen = BTreeSet::new();
    let mut reports = Vec::new();
    for root in roots.clone() {
        if !seen.insert(root) {
            continue;
        }
        let vertices: Vec<usize> = (0..rows).filter(|&v| roots[v] == root).collect();
        let columns: Vec<usize> = subset
            .iter()
            .copied()
            .filter(|&c| roots[column_vertices(eg, c)[0]] == root)
            .collect();
        reports.push(component_report(eg, vertices, columns));
    }
    roots.clear();
    reports
}

fn component_report(
    eg: &ExtendedGraph,
    vertices: Vec<usize>,
    columns: Vec<usize>,
) -> ComponentReport {
    let ground_edges = columns
        .iter()
        .filter(|&&c| matches!(eg.columns[c], ColumnKind::GroundEdge(_)))
        .count();
    let regular: Vec<usize> = columns
        .iter()
        .copied()
        .filter(|&c| !matches!(eg.columns[c], ColumnKind::GroundEdge(_)))
        .collect();
    let kind = if ground_edges == 1 && regular.len() + 1 == vertices.len() {
        ComponentKind::GroundEdgeTree
    } else if ground_edges == 0 && regular.len() == vertices.len() {
        ComponentKind::JointCycle {
            joints: cycle_joints(eg, &vertices, &regular),
        }
    } else {
        ComponentKind::Irregular
    };
    let determinant = if vertices.len() == columns.len() {
        let sub: Vec<Vec<BigInt>> = vertices
            .iter()
            .map(|&r| columns.iter().map(|&c| BigInt::from(eg.matrix[r][c])).collect())
            .collect();
        Some(integer_determinant(&sub))
    } else {
        None
    };
    ComponentReport {
        vertices,
        columns,
        kind,
        determinant,
    }
}

/// Strips pendant vertices until only the cycle remains, then counts
/// the joints on it.
fn cycle_joints(eg: &ExtendedGraph, vertices: &[usize], regular: &[usize]) -> usize {
    let mut alive: BTreeSet<usize> = vertices.iter().copied().collect();
    let mut edges: Vec<(usize, usize)> = regular
        .iter()
        .map(|&c| {
            let vs = column_vertices(eg, c);
            (vs[0], vs[1])
        })
        .collect();
    loop {
        let mut degree: std::collections::BTreeMap<usize, usize> = Default::default();
        for &(a, b) in &edges {
            *degree.entry(a).or_insert(0) += 1;
            *degree.entry(b).or_insert(0) += 1;
        }
        let leaf = alive
            .iter()
            .copied()
            .find(|v| degree.get(v).copied().unwrap_or(0) <= 1);
        match leaf {
            Some(v) => {
                alive.remove(&v);
                edges.retain(|&(a, b)| a != v && b != v);
            }
            None => break,
        }
    }
    alive
        .iter()
        .filter(|&&v| {
            v < eg.shape.kinds.len() && eg.shape.kinds[v] == ShapeKind::Joint
        })
        .count()
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ResidueFit {
    pub residue: i64,
    /// polynomial in the ray parameter, ascending powers
    pub coefficients: Vec<BigRational>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QuasiPolynomialFit {
    pub modulus: i64,
    /// present when one polynomial explains every sample
    pub single: Option<Vec<BigRational>>,
    pub classes: Vec<ResidueFit>,
    pub degree_bound: usize,
    pub points_checked: usize,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum FitError {
    #[error("residue class {residue} mod {modulus} has {got} samples, needs {needed}")]
    TooFewSamples {
        modulus: i64,
        residue: i64,
        needed: usize,
        got: usize,
    },
    #[error("no degree-{degree_bound} polynomial on residue {residue} mod {modulus} matches the sample at t = {t}")]
    NotQuasiPolynomial {
        modulus: i64,
        residue: i64,
        t: i64,
        degree_bound: usize,
    },
}

fn poly_mul_linear(p: &[BigRational], root: i64) -> Vec<BigRational> {
    let mut out = vec![rat(0); p.len() + 1];
    for (k, c) in p.iter().enumerate() {
        out[k + 1] += c;
        out[k] -= c * &rat(root);
    }
    out
}

fn interpolate(ts: &[i64], vs: &[BigRational]) -> Vec<BigRational> {
    let n = ts.len();
    let mut coeffs = vec![rat(0); n.max(1)];
    for i in 0..n {
        let mut num = vec![rat(1)];
        let mut denom = rat(1);
        for (j, &tj) in ts.iter().enumerate() {
            if j != i {
                num = poly_mul_linear(&num, tj);
                denom *= rat(ts[i] - tj);
            }
        }
        let scale = &vs[i] / denom;
        for (k, c) in num.iter().enumerate() {
            coeffs[k] += c * &scale;
        }
    }
    while coeffs.len() > 1 && coeffs.last().unwrap().is_zero() {
        coeffs.pop();
    }
    coeffs
}

pub fn poly_eval(coefficients: &[BigRational], t: i64) -> BigRational {
    let mut acc = rat(0);
    for c in coefficients.iter().rev() {
        acc = acc * rat(t) + c;
    }
    acc
}

/// Fits the sampled values as a polynomial in the ray parameter,
/// both as one polynomial over all samples and per residue class of
/// the parameter. The per-class fit must verify exactly on every
/// held-out sample; the single fit is reported only if it does.
pub fn fit_on_ray(
    ts: &[i64],
    values: &[BigRational],
    degree_bound: usize,
    modulus: i64,
) -> Result<QuasiPolynomialFit, FitError> {
    assert_eq!(ts.len(), values.len());
    assert!(modulus >= 1);
    let needed = degree_bound + 2;

    let single_coeffs = if ts.len() >= needed {
        let head = degree_bound + 1;
        let fit = interpolate(&ts[..head], &values[..head]);
        ts.iter()
            .zip(values)
            .all(|(&t, v)| &poly_eval(&fit, t) == v)
            .then_some(fit)
    } else {
        None
    };

    let mut classes = Vec::new();
    for residue in 0..modulus {
        let (cts, cvs): (Vec<i64>, Vec<BigRational>) = ts
            .iter()
            .zip(values)
            .filter(|(&t, _)| t.rem_euclid(modulus) == residue)
            .map(|(&t, v)| (t, v.clone()))
            .unzip();
        if cts.len() < needed {
            return Err(FitError::TooFewSamples {
                modulus,
                residue,
                needed,
                got: cts.len(),
            });
        }
        let head = degree_bound + 1;
        let fit = interpolate(&cts[..head], &cvs[..head]);
        for (&t, v) in cts.iter().zip(&cvs) {
            if &poly_eval(&fit, t) != v {
                return Err(FitError::NotQuasiPolynomial {
                    modulus,
                    residue,
                    t,
                    degree_bound,
                });
            }
        }
        classes.push(ResidueFit {
            residue,
            coefficients: fit,
        });
    }
    Ok(QuasiPolynomialFit {
        modulus,
        single: single_coeffs,
        classes,
        degree_bound,
        points_checked: ts.len(),
    })
}

impl QuasiPolynomialFit {
    pub fn evaluate(&self, t: i64) -> BigRational {
        let r = t.rem_euclid(self.modulus);
        let class = self
            .classes
            .iter()
            .find(|c| c.residue == r)
            .expect("every residue has a class");
        poly_eval(&class.coefficients, t)
    }
}

/// A one-parameter family of boundary data on a fixed shape with
/// fixed floor degrees: end values move along `base + t * direction`
/// and each sample is a monomial-weighted count of the weightings.
#[derive(Clone, Debug)]
pub struct RayFamily {
    pub name: &'static str,
    pub shape: BareShape,
    pub surface: SurfaceKind,
    pub ground_doubled: Vec<i64>,
    pub exponents: Vec<u32>,
    pub base: Vec<i64>,
    pub direction: Vec<i64>,
}

impl RayFamily {
    pub fn entries_at(&self, t: i64) -> Vec<i64> {
        self.base
            .iter()
            .zip(&self.direction)
            .map(|(&b, &d)| b + t * d)
            .collect()
    }

    pub fn value_at(&self, t: i64) -> BigRational {
        let eg = build_extended(&self.shape);
        let d = divergence_vector(
            &eg,
            self.surface.delta(),
            &self.ground_doubled,
            &self.entries_at(t),
        );
        count_weightings(&eg, &d, &self.exponents)
    }

    pub fn sample(&self, ts: &[i64]) -> Vec<BigRational> {
        ts.iter().map(|&t| self.value_at(t)).collect()
    }
}

/// Built-in ray families. Exponents follow the multiplicity rule:
/// one per floor endpoint of the edge, everything treated as marked.
pub fn ray_family(name: &str) -> Option<RayFamily> {
    let family = match name {
        "ground" => RayFamily {
            name: "ground",
            shape: BareShape {
                kinds: vec![ShapeKind::Ground],
                edges: vec![],
                ends: vec![0, 0, 0],
            },
            surface: SurfaceKind::M0,
            ground_doubled: vec![2],
            exponents: vec![1, 1, 1, 0],
            base: vec![3, 2, 1],
            direction: vec![2, 0, 0],
        },
        "ground-etage" => RayFamily {
            name: "ground-etage",
            shape: BareShape {
                kinds: vec![ShapeKind::Ground, ShapeKind::Etage],
                edges: vec![(0, 1)],
                ends: vec![1, 1],
            },
            surface: SurfaceKind::M0,
            ground_doubled: vec![1],
            exponents: vec![2, 1, 1, 0],
            base: vec![2, 2],
            direction: vec![1, 1],
        },
        "one-end" => RayFamily {
            name: "one-end",
            shape: BareShape {
                kinds: vec![ShapeKind::Ground, ShapeKind::Etage],
                edges: vec![(0, 1)],
                ends: vec![1],
            },
            surface: SurfaceKind::M0,
            ground_doubled: vec![1],
            exponents: vec![2, 1, 0],
            base: vec![4],
            direction: vec![2],
        },
        "parallel-grounds" => RayFamily {
            name: "parallel-grounds",
            shape: BareShape {
                kinds: vec![
                    ShapeKind::Ground,
                    ShapeKind::Ground,
                    ShapeKind::Etage,
                    ShapeKind::Etage,
                ],
                edges: vec![(0, 2), (1, 3), (2, 3)],
                ends: vec![2, 3],
            },
            surface: SurfaceKind::M0,
            ground_doubled: vec![1, 1],
            exponents: vec![2, 2, 2, 1, 1, 0, 0],
            base: vec![3, 5],
            direction: vec![1, 1],
        },
        _ => return None,
    };
    Some(family)
}

pub const RAY_FAMILY_NAMES: [&str; 4] =
    ["ground", "ground-etage", "one-end", "parallel-grounds"];

/// Doubled floor degrees per vertex summing to the doubled section
/// degree: even and positive at upper floors, positive at grounds,
/// zero at joints.
pub fn floor_degree_assignments(kinds: &[ShapeKind], total_doubled: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut current = vec![0i64; kinds.len()];
    fn recurse(
        kinds: &[ShapeKind],
        v: usize,
        remaining: i64,
        current: &mut Vec<i64>,
        out: &mut Vec<Vec<i64>>,
    ) {
        if v == kinds.len() {
            if remaining == 0 {
                out.push(current.clone());
            }
            return;
        }
        match kinds[v] {
            ShapeKind::Joint => {
                current[v] = 0;
                recurse(kinds, v + 1, remaining, current, out);
            }
            ShapeKind::Ground => {
                for d in 1..=remaining {
                    current[v] = d;
                    recurse(kinds, v + 1, remaining - d, current, out);
                }
            }
            ShapeKind::Etage => {
                let mut d = 2;
                while d <= remaining {
                    current[v] = d;
                    recurse(kinds, v + 1, remaining - d, current, out);
                    d += 2;
                }
            }
        }
    }
    recurse(kinds, 0, total_doubled, &mut current, &mut out);
    out
}

fn degree_scalar(shape: &BareShape, doubled: &[i64], convention: Convention) -> BigInt {
    let extra = matches!(convention, Convention::Val) as usize;
    let mut scalar = BigInt::from(1);
    for v in 0..shape.kinds.len() {
        let val = shape.valence(v);
        match shape.kinds[v] {
            ShapeKind::Etage => {
                let deg = (doubled[v] / 2) as u64;
                scalar *= BigInt::from(deg).pow((val - 1 + extra) as u32)
                    * BigInt::from(sigma1(deg));
            }
            ShapeKind::Ground => {
                let dd = doubled[v] as u64;
                let tilde = BigInt::from(sigma1_tilde(dd));
                scalar *= match convention {
                    Convention::ValMinusOne => {
                        BigInt::from(2) * BigInt::from(dd).pow((val - 1) as u32) * tilde
                    }
                    Convention::Val => BigInt::from(dd).pow(val as u32) * tilde,
                };
            }
            ShapeKind::Joint => {}
        }
    }
    scalar
}

fn marking_exponents(eg: &ExtendedGraph, marked: &[Cell]) -> Vec<u32> {
    eg.columns
        .iter()
        .map(|&col| match col {
            ColumnKind::Interior(k) => {
                let (t, h) = eg.shape.edges[k];
                let floors = (eg.shape.kinds[t] != ShapeKind::Joint) as u32
                    + (eg.shape.kinds[h] != ShapeKind::Joint) as u32;
                floors + !marked.contains(&Cell::Edge(k)) as u32
            }
            ColumnKind::EndEdge(k) => {
                let v = eg.shape.ends[k];
                (eg.shape.kinds[v] != ShapeKind::Joint) as u32
                    + !marked.contains(&Cell::End(k)) as u32
            }
            ColumnKind::GroundEdge(_) => 0,
        })
        .collect()
}

fn dummy_diagram(
    shape: &BareShape,
    doubled: &[i64],
    end_values: &[i64],
    solution: &[i64],
    eg: &ExtendedGraph,
) -> FloorDiagram {
    let vertices: Vec<VertexKind> = shape
        .kinds
        .iter()
        .zip(doubled)
        .map(|(&k, &dd)| match k {
            ShapeKind::Ground => VertexKind::Ground {
                degree: HalfInt::from_doubled(dd),
            },
            ShapeKind::Etage => VertexKind::Etage {
                degree: (dd / 2) as u32,
            },
            ShapeKind::Joint => VertexKind::Joint,
        })
        .collect();
    let mut edges = Vec::new();
    for (c, &col) in eg.columns.iter().enumerate() {
        if let ColumnKind::Interior(k) = col {
            let (tail, head) = shape.edges[k];
            edges.push(BoundedEdge {
                tail,
                head,
                weight: solution[c] as u32,
            });
        }
    }
    let ends: Vec<End> = shape
        .ends
        .iter()
        .zip(end_values)
        .map(|(&v, &value)| End {
            vertex: v,
            weight: value as u32,
        })
        .collect();
    FloorDiagram::new(vertices, edges, ends)
        .expect("solutions of the extended system satisfy the diagram conditions")
}

/// The invariant computed without ever enumerating weighted diagrams:
/// bare shapes, floor degrees, and slot-to-end assignments reduce the
/// sum to monomial-weighted solution counts of the extended systems.
pub fn invariant_via_weightings(
    surface: SurfaceKind,
    genus: usize,
    a: HalfInt,
    fixed: &Partition,
    free: &Partition,
    convention: Convention,
) -> Result<BigRational, MarkingError> {
    let merged = fixed.merge(free);
    let two_a = a.doubled();
    if two_a <= 0 || merged.is_empty() {
        return Ok(rat(0));
    }
    let mut seen = BTreeSet::new();
    let mut total = rat(0);
    for ws in enumerate_weighted_shapes(surface, genus, &merged) {
        let shape = BareShape::from_shape(&ws);
        if !seen.insert(shape.canonical_key()) {
            continue;
        }
        total += bare_shape_total(surface, &shape, two_a, fixed, free, convention)?;
    }
    Ok(total)
}

fn bare_shape_total(
    surface: SurfaceKind,
    shape: &BareShape,
    two_a: i64,
    fixed: &Partition,
    free: &Partition,
    convention: Convention,
) -> Result<BigRational, MarkingError> {
    let eg = build_extended(shape);
    let grounds = shape.grounds();
    let n_ends = shape.ends.len();
    let mut slots: Vec<i64> = fixed.parts().iter().map(|&p| p as i64).collect();
    slots.extend(free.parts().iter().map(|&p| p as i64));
    if slots.len() != n_ends {
        return Ok(rat(0));
    }
    let sym = rat_big(BigInt::from(free.symmetry_order()));

    let mut total = rat(0);
    for doubled in floor_degree_assignments(&shape.kinds, two_a) {
        let ground_doubled: Vec<i64> = grounds.iter().map(|&g| doubled[g]).collect();
        let mut acc = rat(0);
        for perm in (0..n_ends).permutations(n_ends) {
            let mut end_values = vec![0i64; n_ends];
            for (slot, &end) in perm.iter().enumerate() {
                end_values[end] = slots[slot];
            }
            let d = divergence_vector(&eg, surface.delta(), &ground_doubled, &end_values);
            let solutions = weightings(&eg, &d);
            if solutions.is_empty() {
                continue;
            }
            let mut fixed_targets: Vec<usize> = perm[..fixed.len()].to_vec();
            fixed_targets.sort_unstable();
            let dummy = dummy_diagram(shape, &doubled, &end_values, &solutions[0], &eg);
            for class in enumerate_marking_classes(&dummy, fixed, free)? {
                let mut class_fixed = class.fixed_ends.clone();
                class_fixed.sort_unstable();
                if class_fixed != fixed_targets {
                    continue;
                }
                let exponents = marking_exponents(&eg, &class.marked);
                let mut weighted = BigInt::zero();
                for solution in &solutions {
                    weighted += monomial(solution, &exponents);
                }
                acc += rat_big(
                    BigInt::from(class.extension_count)
                        * BigInt::from(2).pow(class.cycle_components as u32)
                        * weighted,
                );
            }
        }
        if acc.is_zero() {
            continue;
        }
        let aut = rat_big(BigInt::from(shape.aut_order_with_degrees(&doubled)));
        total += rat_big(degree_scalar(shape, &doubled, convention)) * acc / (aut * &sym);
    }
    Ok(total)
}

/// Compares the diagram-enumeration value with the weighting-count
/// value for one request; both paths must agree exactly.
pub fn cross_check(
    surface: SurfaceKind,
    genus: usize,
    a: HalfInt,
    fixed: &Partition,
    free: &Partition,
    convention: Convention,
) -> Result<(BigRational, BigRational), InvariantError> {
    let direct = invariant(surface, genus, a, fixed, free, convention)?.classical;
    let via = invariant_via_weightings(surface, genus, a, fixed, free, convention)?;
    Ok((direct, via))
}

/// All shapes within the given bounds, up to isomorphism. The edge
/// budget counts the columns of the extended matrix: bounded edges,
/// ends, and one auxiliary edge per ground.
pub fn enumerate_bare_shapes(
    max_floors: usize,
    max_joints: usize,
    max_ends: usize,
    max_extended_edges: usize,
) -> Vec<BareShape> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for n_ground in 0..=max_floors {
        for n_etage in 0..=(max_floors - n_ground) {
            if n_ground + n_etage == 0 {
                continue;
            }
            for n_joint in 0..=max_joints {
                collect_shapes(
                    n_ground,
                    n_etage,
                    n_joint,
                    max_ends,
                    max_extended_edges,
                    &mut seen,
                    &mut out,
                );
            }
        }
    }
    out
}

fn collect_shapes(
    n_ground: usize,
    n_etage: usize,
    n_joint: usize,
    max_ends: usize,
    max_extended: usize,
    seen: &mut BTreeSet<Vec<i64>>,
    out: &mut Vec<BareShape>,
) {
    let kinds: Vec<ShapeKind> = std::iter::repeat(ShapeKind::Ground)
        .take(n_ground)
        .chain(std::iter::repeat(ShapeKind::Etage).take(n_etage))
        .chain(std::iter::repeat(ShapeKind::Joint).take(n_joint))
        .collect();
    let etage_ids: Vec<usize> = (n_ground..n_ground + n_etage).collect();
    let joint_ids: Vec<usize> = (n_ground + n_etage..kinds.len()).collect();

    // each joint picks an unordered pair of targets: an upper floor
    // or an own end
    let mut joint_targets: Vec<Option<usize>> = etage_ids.iter().map(|&e| Some(e)).collect();
    joint_targets.push(None);
    let joint_options: Vec<Vec<Option<usize>>> = joint_targets
        .iter()
        .copied()
        .combinations_with_replacement(2)
        .collect();

    let mut joint_pick = vec![0usize; n_joint];
    loop {
        let mut edges: Vec<(usize, usize)> = Vec::new();
        let mut ends: Vec<usize> = Vec::new();
        for (j, &pick) in joint_pick.iter().enumerate() {
            for target in &joint_options[pick] {
                match target {
                    Some(e) => edges.push((joint_ids[j], *e)),
                    None => ends.push(joint_ids[j]),
                }
            }
        }
        let budget = max_extended as i64
            - n_ground as i64
            - edges.len() as i64
            - ends.len() as i64;
        if budget >= 0 && ends.len() <= max_ends {
            extend_with_floor_edges(
                &kinds,
                &etage_ids,
                edges,
                ends,
                max_ends,
                budget as usize,
                seen,
                out,
            );
        }
        if !advance(&mut joint_pick, joint_options.len()) {
            break;
        }
    }
}

fn advance(state: &mut [usize], radix: usize) -> bool {
    for slot in state.iter_mut() {
        *slot += 1;
        if *slot < radix {
            return true;
        }
        *slot = 0;
    }
    false
}

#[allow(clippy::too_many_arguments)]
fn extend_with_floor_edges(
    kinds: &[ShapeKind],
    etage_ids: &[usize],
    base_edges: Vec<(usize, usize)>,
    base_ends: Vec<usize>,
    max_ends: usize,
    budget: usize,
    seen: &mut BTreeSet<Vec<i64>>,
    out: &mut Vec<BareShape>,
) {
    let grounds: Vec<usize> = (0..kinds.len())
        .filter(|&v| kinds[v] == ShapeKind::Ground)
        .collect();
    let mut slots: Vec<(usize, usize)> = Vec::new();
    for &g in &grounds {
        for &e in etage_ids {
            slots.push((g, e));
        }
    }
    for &t in etage_ids {
        for &h in etage_ids {
            if t != h {
                slots.push((t, h));
            }
        }
    }
    let floors: Vec<usize> = (0..kinds.len())
        .filter(|&v| kinds[v] != ShapeKind::Joint)
        .collect();

    let mut counts = vec![0usize; slots.len()];
    loop {
        let used: usize = counts.iter().sum();
        if used <= budget {
            let mut edges = base_edges.clone();
            for (slot, &count) in counts.iter().enumerate() {
                for _ in 0..count {
                    edges.push(slots[slot]);
                }
            }
            let end_budget = (budget - used).min(max_ends - base_ends.len().min(max_ends));
            let mut end_counts = vec![0usize; floors.len()];
            loop {
                let placed: usize = end_counts.iter().sum();
                if placed <= end_budget && placed + base_ends.len() <= max_ends {
                    let mut ends = base_ends.clone();
                    for (i, &count) in end_counts.iter().enumerate() {
                        for _ in 0..count {
                            ends.push(floors[i]);
                        }
                    }
                    if !ends.is_empty() {
                        let shape = BareShape {
                            kinds: kinds.to_vec(),
                            edges: edges.clone(),
                            ends,
                        };
                        if shape_is_valid(&shape) && seen.insert(shape.canonical_key()) {
                            out.push(shape);
                        }
                    }
                }
                if !advance(&mut end_counts, end_budget + 1) {
                    break;
                }
            }
        }
        if !advance(&mut counts, budget + 1) {
            break;
        }
    }
}

fn shape_is_valid(shape: &BareShape) -> bool {
    let n = shape.kinds.len();
    for v in 0..n {
        let incoming = shape.edges.iter().filter(|&&(_, h)| h == v).count();
        let outgoing = shape.edges.iter().filter(|&&(t, _)| t == v).count()
            + shape.ends.iter().filter(|&&w| w == v).count();
        match shape.kinds[v] {
            ShapeKind::Ground => {
                if incoming > 0 || outgoing == 0 {
                    return false;
                }
            }
            ShapeKind::Etage => {
                if incoming == 0 || outgoing == 0 {
                    return false;
                }
            }
            ShapeKind::Joint => {
                if incoming > 0 || outgoing != 2 {
                    return false;
                }
            }
        }
    }
    // directed cycles could only run through upper floors
    let mut state = vec![0u8; n];
    fn dfs(v: usize, edges: &[(usize, usize)], state: &mut Vec<u8>) -> bool {
        state[v] = 1;
        for &(t, h) in edges {
            if t == v {
                if state[h] == 1 {
                    return false;
                }
                if state[h] == 0 && !dfs(h, edges, state) {
                    return false;
                }
            }
        }
        state[v] = 2;
        true
    }
    for v in 0..n {
        if state[v] == 0 && !dfs(v, &shape.edges, &mut state) {
            return false;
        }
    }
    // connectivity over bounded edges
    let mut reach = vec![false; n];
    let mut stack = vec![0usize];
    reach[0] = true;
    while let Some(v) = stack.pop() {
        for &(t, h) in &shape.edges {
            if t == v && !reach[h] {
                reach[h] = true;
                stack.push(h);
            }
            if h == v && !reach[t] {
                reach[t] = true;
                stack.push(t);
            }
        }
    }
    reach.iter().all(|&r| r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn profile(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn parallel_grounds() -> RayFamily {
        ray_family("parallel-grounds").unwrap()
    }

    #[test]
    fn extended_matrix_of_the_parallel_ground_shape() {
        let family = parallel_grounds();
        let eg = build_extended(&family.shape);
        assert_eq!(eg.matrix.len(), 6);
        assert_eq!(eg.columns.len(), 7);
        let ground_cols: Vec<usize> = (0..7)
            .filter(|&c| matches!(eg.columns[c], ColumnKind::GroundEdge(_)))
            .collect();
        assert_eq!(ground_cols.len(), 2);
        for &c in &ground_cols {
            let entries: Vec<i64> = (0..6).map(|r| eg.matrix[r][c]).filter(|&x| x != 0).collect();
            assert_eq!(entries, vec![-2]);
        }
    }

    #[test]
    fn parity_selects_the_interior_weight() {
        let family = parallel_grounds();
        let eg = build_extended(&family.shape);
        let pure = vec![0u32; eg.columns.len()];
        let count = |surface: SurfaceKind, mu: [i64; 2]| {
            let d = divergence_vector(&eg, surface.delta(), &family.ground_doubled, &mu);
            count_weightings(&eg, &d, &pure)
        };
        assert_eq!(count(SurfaceKind::M0, [3, 5]), rat(2));
        assert_eq!(count(SurfaceKind::M0, [4, 6]), rat(2));
        assert_eq!(count(SurfaceKind::M0, [3, 7]), rat(3));
        assert_eq!(count(SurfaceKind::M1, [3, 5]), rat(2));
        assert_eq!(count(SurfaceKind::M1, [3, 7]), rat(3));
        assert_eq!(count(SurfaceKind::M0, [3, 6]), rat(0));
    }

    #[test]
    fn weighted_count_with_the_multiplicity_monomial() {
        let family = parallel_grounds();
        let eg = build_extended(&family.shape);
        let d = divergence_vector(&eg, 0, &family.ground_doubled, &[1, 3]);
        // unique solution w = 1, u1 = 2, u2 = 2
        assert_eq!(weightings(&eg, &d).len(), 1);
        assert_eq!(count_weightings(&eg, &d, &family.exponents), rat(48));
    }

    #[test]
    fn joint_systems_solve_uniquely_or_not_at_all() {
        let shape = BareShape {
            kinds: vec![ShapeKind::Etage, ShapeKind::Etage, ShapeKind::Joint],
            edges: vec![(2, 0), (2, 1), (0, 1)],
            ends: vec![0, 1],
        };
        let eg = build_extended(&shape);
        let pure = vec![0u32; eg.columns.len()];
        let count = |mu: [i64; 2]| {
            let d = divergence_vector(&eg, 0, &[], &mu);
            count_weightings(&eg, &d, &pure)
        };
        assert_eq!(count([1, 5]), rat(1));
        assert_eq!(count([5, 1]), rat(0));
        assert_eq!(count([1, 4]), rat(0));
    }

    #[test]
    fn zero_boundary_data_admits_no_weighting() {
        let family = ray_family("one-end").unwrap();
        let eg = build_extended(&family.shape);
        let d = divergence_vector(&eg, 0, &family.ground_doubled, &[0]);
        assert!(weightings(&eg, &d).is_empty());
    }

    #[test]
    fn ground_tree_minor_has_determinant_two() {
        let shape = BareShape {
            kinds: vec![ShapeKind::Ground],
            edges: vec![],
            ends: vec![0],
        };
        let reports = minor_analysis(&build_extended(&shape));
        assert_eq!(reports.len(), 1);
        let r = &reports[0];
        assert_eq!(r.determinant.abs(), BigInt::from(2));
        assert_eq!(r.components.len(), 1);
        assert_eq!(r.components[0].kind, ComponentKind::GroundEdgeTree);
        assert_eq!(r.torsion, vec![BigInt::from(2)]);
        assert!(r.torsion_matches);
    }

    #[test]
    fn odd_joint_cycle_minor_has_determinant_two() {
        let shape = BareShape {
            kinds: vec![ShapeKind::Etage, ShapeKind::Joint],
            edges: vec![(1, 0), (1, 0)],
            ends: vec![0],
        };
        let reports = minor_analysis(&build_extended(&shape));
        assert_eq!(reports.len(), 1);
        let r = &reports[0];
        assert_eq!(r.determinant.abs(), BigInt::from(2));
        assert_eq!(r.components[0].kind, ComponentKind::JointCycle { joints: 1 });
        assert!(r.torsion_matches);
    }

    #[test]
    fn even_joint_cycle_minor_vanishes() {
        let shape = BareShape {
            kinds: vec![
                ShapeKind::Etage,
                ShapeKind::Etage,
                ShapeKind::Joint,
                ShapeKind::Joint,
            ],
            edges: vec![(2, 0), (2, 1), (3, 0), (3, 1)],
            ends: vec![0, 1],
        };
        let reports = minor_analysis(&build_extended(&shape));
        assert_eq!(reports.len(), 1);
        assert!(reports[0].determinant.is_zero());
    }

    #[test]
    fn two_ground_trees_push_the_determinant_to_four() {
        // one selection splits into two components of order two each:
        // the classification and the torsion prediction hold, while
        // the determinant of the whole minor escapes {1, 2}
        let shape = BareShape {
            kinds: vec![ShapeKind::Ground, ShapeKind::Ground, ShapeKind::Etage],
            edges: vec![(0, 2), (1, 2)],
            ends: vec![2, 2],
        };
        let reports = minor_analysis(&build_extended(&shape));
        let four: Vec<&MinorReport> = reports
            .iter()
            .filter(|r| r.determinant.abs() == BigInt::from(4))
            .collect();
        assert!(!four.is_empty());
        for r in &four {
            assert!(r.classification_ok);
            assert!(r.torsion_matches);
            assert_eq!(r.torsion, vec![BigInt::from(2), BigInt::from(2)]);
            assert_eq!(
                r.components
                    .iter()
                    .filter(|c| c.kind == ComponentKind::GroundEdgeTree)
                    .count(),
                2
            );
        }
        for r in &reports {
            if !r.determinant.is_zero() {
                assert!(r.classification_ok, "columns {:?}", r.columns);
                assert!(r.torsion_matches, "columns {:?}", r.columns);
            }
        }
    }

    #[test]
    fn polynomial_families_fit_with_one_polynomial() {
        for name in ["ground", "ground-etage", "one-end"] {
            let family = ray_family(name).unwrap();
            let ts: Vec<i64> = (0..16).collect();
            let values = family.sample(&ts);
            let fit = fit_on_ray(&ts, &values, 4, 2).unwrap();
            assert!(fit.single.is_some(), "{name}");
        }
        let ground = ray_family("ground").unwrap();
        let ts: Vec<i64> = (0..8).collect();
        let fit = fit_on_ray(&ts, &ground.sample(&ts), 1, 2).unwrap();
        assert_eq!(fit.single, Some(vec![rat(6), rat(4)]));
    }

    #[test]
    fn parity_family_needs_the_residue_split() {
        let family = parallel_grounds();
        let ts: Vec<i64> = (0..24).collect();
        let values = family.sample(&ts);
        let fit = fit_on_ray(&ts, &values, 9, 2).unwrap();
        assert!(fit.single.is_none());
        assert_eq!(fit.classes.len(), 2);
        for t in 24..34 {
            assert_eq!(fit.evaluate(t), family.value_at(t), "t = {t}");
        }
    }

    #[test]
    fn exponential_samples_are_rejected() {
        let ts: Vec<i64> = (0..12).collect();
        let values: Vec<BigRational> = ts.iter().map(|&t| rat(1i64 << t)).collect();
        let err = fit_on_ray(&ts, &values, 2, 2).unwrap_err();
        assert!(matches!(err, FitError::NotQuasiPolynomial { .. }));
    }

    #[test]
    fn both_computation_paths_agree() {
        let cases = [
            (SurfaceKind::M0, 1, 2, "", "1,1"),
            (SurfaceKind::M0, 1, 2, "1,1", ""),
            (SurfaceKind::M0, 1, 2, "1", "1"),
            (SurfaceKind::M0, 1, 4, "", "2,1,1"),
            (SurfaceKind::M1, 1, 4, "", "1,1"),
            (SurfaceKind::M1, 1, 3, "", "1"),
            (SurfaceKind::M0, 2, 3, "", "1,1"),
            (SurfaceKind::M0, 2, 4, "2", "1,1"),
            (SurfaceKind::M1, 2, 2, "", "1"),
            (SurfaceKind::M0, 3, 3, "", "1,1"),
        ];
        for (surface, genus, two_a, mu, nu) in cases {
            let fixed = profile(mu);
            let free = profile(nu);
            for convention in Convention::BOTH {
                let (direct, via) = cross_check(
                    surface,
                    genus,
                    HalfInt::from_doubled(two_a),
                    &fixed,
                    &free,
                    convention,
                )
                .unwrap();
                assert_eq!(
                    direct, via,
                    "{surface} g={genus} 2a={two_a} mu=({mu}) nu=({nu}) {convention:?}"
                );
            }
        }
    }

    #[test]
    fn weighting_path_reproduces_reference_values() {
        let v = |surface, genus, two_a, mu: &str, nu: &str| {
            invariant_via_weightings(
                surface,
                genus,
                HalfInt::from_doubled(two_a),
                &profile(mu),
                &profile(nu),
                Convention::ValMinusOne,
            )
            .unwrap()
        };
        assert_eq!(v(SurfaceKind::M0, 1, 2, "", "1,1"), rat(12));
        assert_eq!(v(SurfaceKind::M0, 1, 2, "1,1", ""), rat(16));
        assert_eq!(v(SurfaceKind::M0, 1, 2, "1", "1"), rat(19));
        assert_eq!(v(SurfaceKind::M1, 1, 4, "", "1,1"), rat(56));
        assert_eq!(v(SurfaceKind::M0, 3, 3, "", "1,1"), rat(4));
    }

    #[test]
    fn small_shape_census() {
        let single_floor = enumerate_bare_shapes(1, 0, 2, 12);
        assert_eq!(single_floor.len(), 2);
        let with_joint = enumerate_bare_shapes(1, 1, 2, 12);
        assert_eq!(with_joint.len(), 5);
        for shape in &with_joint {
            assert!(shape_is_valid(shape));
            assert!(shape.ends.len() <= 2);
        }
    }
}
