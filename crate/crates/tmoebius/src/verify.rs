//! Self-contained verification suite: nine checks covering the
//! generator identities, the refined/classical bridge, the genus-1
//! closed form, the reference catalogue, the minor structure of
//! extended matrices, the factorized generating series, the
//! polynomiality fits, the two independent computation paths, and
//! determinism under worker counts.

use crate::diagram::{
    BoundedEdge, End, FloorDiagram, HomologyClass, SurfaceKind, VertexKind,
};
use crate::enumerate::{enumerate_diagrams, enumerate_weighted_shapes};
use crate::exact::{display_rational, rat, rat_big, BigInt, BigRational};
use crate::gen_series::{
    factorized_form, generating_series, generator_products, per_diagram_series, span_check,
};
use crate::half_int::HalfInt;
use crate::multiplicity::{genus_one_closed_form, invariant, Convention};
use crate::partition::Partition;
use crate::power_series::{g2, h, h_even, h_odd, TruncatedSeries};
use crate::regularity::{
    build_extended, enumerate_bare_shapes, fit_on_ray, invariant_via_weightings,
    minor_analysis, ray_family, RayFamily,
};
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

pub const CRITERION_COUNT: usize = 9;

pub const CRITERION_NAMES: [&str; CRITERION_COUNT] = [
    "series identity",
    "refined at q=1 and palindromy",
    "genus-1 calibration",
    "reference diagrams and genus-2 catalogue",
    "minor structure census",
    "factorized generating series",
    "polynomiality fits",
    "cross-path equality",
    "worker-count determinism",
];

#[derive(Clone, Debug)]
pub struct CriterionReport {
    pub index: usize,
    pub name: &'static str,
    pub passed: bool,
    pub details: Vec<String>,
    pub seconds: f64,
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "criterion {}: {} [{}] ({:.2}s)",
            self.index,
            self.name,
            if self.passed { "pass" } else { "FAIL" },
            self.seconds
        )
    }
}

pub fn criterion(index: usize) -> CriterionReport {
    let start = Instant::now();
    let (passed, details) = match index {
        1 => series_identity(),
        2 => refined_specialization(),
        3 => genus_one_calibration(),
        4 => reference_catalogue(),
        5 => minor_census(),
        6 => factorized_series(),
        7 => polynomiality_fits(),
        8 => cross_path_equality(),
        9 => worker_determinism(),
        _ => panic!("criterion index out of range: {index}"),
    };
    CriterionReport {
        index,
        name: CRITERION_NAMES[index - 1],
        passed,
        details,
        seconds: start.elapsed().as_secs_f64(),
    }
}

pub fn run_suite(indices: &[usize]) -> Vec<CriterionReport> {
    indices.iter().map(|&i| criterion(i)).collect()
}

pub fn run_all() -> Vec<CriterionReport> {
    run_suite(&[1, 2, 3, 4, 5, 6, 7, 8, 9])
}

fn series_equal(a: &TruncatedSeries, b: &TruncatedSeries) -> Option<usize> {
    let order = a.order().min(b.order());
    (0..=order).find(|&n| a.coeff(n) != b.coeff(n))
}

fn series_identity() -> (bool, Vec<String>) {
    let order = 200;
    let mut details = Vec::new();
    let mut ok = true;

    let lhs = h(order);
    let g = g2(order);
    let rhs_coeffs: Vec<BigRational> = (0..=order)
        .map(|n| g.coeff(n) - g.substitute_power(2).coeff(n))
        .collect();
    let rhs = TruncatedSeries::from_coeffs(rhs_coeffs);
    match series_equal(&lhs, &rhs) {
        None => details.push(format!("H = G2(y) - G2(y^2) to order {order}")),
        Some(n) => {
            ok = false;
            details.push(format!("H mismatch at y^{n}"));
        }
    }

    let even = h_even(order);
    let odd = h_odd(order);
    for n in 0..=order {
        if even.coeff(n) + odd.coeff(n) != lhs.coeff(n)
            || (n % 2 == 1 && !even.coeff(n).is_zero())
            || (n % 2 == 0 && !odd.coeff(n).is_zero())
        {
            ok = false;
            details.push(format!("parity decomposition fails at y^{n}"));
            break;
        }
    }
    if ok {
        details.push("H0 + H1 = H with pure parities".to_string());
    }
    (ok, details)
}

fn grid(max_two_a: i64, max_two_b: i64) -> Vec<(SurfaceKind, i64, i64)> {
    let mut out = Vec::new();
    for surface in SurfaceKind::BOTH {
        for two_a in 1..=max_two_a {
            for two_b in 1..=max_two_b {
                if (two_b - surface.delta() * two_a) % 2 == 0 {
                    out.push((surface, two_a, two_b));
                }
            }
        }
    }
    out
}

fn refined_specialization() -> (bool, Vec<String>) {
    let mut cases = 0usize;
    let mut failures = Vec::new();
    for (surface, two_a, two_b) in grid(6, 4) {
        for genus in 1..=3usize {
            for profile in Partition::all_of(two_b as u64) {
                for (fixed, free) in profile.splits() {
                    let inv = match invariant(
                        surface,
                        genus,
                        HalfInt::from_doubled(two_a),
                        &fixed,
                        &free,
                        Convention::ValMinusOne,
                    ) {
                        Ok(inv) => inv,
                        Err(e) => {
                            failures.push(format!(
                                "{surface} g={genus} 2a={two_a} ({fixed};{free}): {e}"
                            ));
                            continue;
                        }
                    };
                    cases += 1;
                    if inv.refined.eval_at_one() != inv.classical {
                        failures.push(format!(
                            "q=1 mismatch: {surface} g={genus} 2a={two_a} ({fixed};{free})"
                        ));
                    }
                    if !inv.refined.is_palindromic() {
                        failures.push(format!(
                            "not palindromic: {surface} g={genus} 2a={two_a} ({fixed};{free})"
                        ));
                    }
                }
            }
        }
    }
    let ok = failures.is_empty();
    let mut details = vec![format!("{cases} requests checked")];
    details.extend(failures.into_iter().take(5));
    (ok, details)
}

fn genus_one_calibration() -> (bool, Vec<String>) {
    let mut val_all = true;
    let mut other_all = true;
    let mut ratio_constant = true;
    let mut points = 0usize;
    for (surface, two_a, two_b) in grid(6, 4) {
        let a = HalfInt::from_doubled(two_a);
        let b = HalfInt::from_doubled(two_b);
        let free = Partition::new(vec![1; two_b as usize]).unwrap();
        let closed = rat_big(genus_one_closed_form(surface, a, b));
        let with = |convention| {
            invariant(surface, 1, a, &Partition::empty(), &free, convention)
                .unwrap()
                .classical
        };
        let by_val = with(Convention::Val);
        let by_other = with(Convention::ValMinusOne);
        points += 1;
        if by_val != closed {
            val_all = false;
        }
        if by_other != closed {
            other_all = false;
        }
        if !closed.is_zero() && by_other * rat(two_a) != &closed * rat(2) {
            ratio_constant = false;
        }
    }
    let ok = val_all && !other_all && ratio_constant;
    let details = vec![
        format!("{points} grid points"),
        format!("convention `val` matches the closed form: {val_all}"),
        format!(
            "convention `val-1` differs by the constant per-section-degree ratio a: {}",
            ratio_constant && !other_all
        ),
    ];
    (ok, details)
}

struct ReferenceDiagram {
    label: &'static str,
    surface: SurfaceKind,
    genus: usize,
    two_a: i64,
    two_b: i64,
    profile: &'static str,
    diagram: FloorDiagram,
}

fn ground(doubled: i64) -> VertexKind {
    VertexKind::Ground {
        degree: HalfInt::from_doubled(doubled),
    }
}

fn etage(degree: u32) -> VertexKind {
    VertexKind::Etage { degree }
}

fn edge(tail: usize, head: usize, weight: u32) -> BoundedEdge {
    BoundedEdge { tail, head, weight }
}

fn end(vertex: usize, weight: u32) -> End {
    End { vertex, weight }
}

fn reference_diagrams() -> Vec<ReferenceDiagram> {
    let build = |vertices: Vec<VertexKind>, edges: Vec<BoundedEdge>, ends: Vec<End>| {
        FloorDiagram::new(vertices, edges, ends).expect("reference diagram is well formed")
    };
    vec![
        ReferenceDiagram {
            label: "ground and etage, two parallel edges",
            surface: SurfaceKind::M0,
            genus: 3,
            two_a: 3,
            two_b: 2,
            profile: "1,1",
            diagram: build(
                vec![ground(1), etage(1)],
                vec![edge(0, 1, 1), edge(0, 1, 1)],
                vec![end(1, 1), end(1, 1)],
            ),
        },
        ReferenceDiagram {
            label: "joint and etage, two parallel edges",
            surface: SurfaceKind::M1,
            genus: 2,
            two_a: 2,
            two_b: 2,
            profile: "1,1",
            diagram: build(
                vec![etage(1), VertexKind::Joint],
                vec![edge(1, 0, 1), edge(1, 0, 1)],
                vec![end(0, 1), end(0, 1)],
            ),
        },
        ReferenceDiagram {
            label: "ground, joint and etage with a weight-2 end",
            surface: SurfaceKind::M0,
            genus: 4,
            two_a: 3,
            two_b: 4,
            profile: "2,1,1",
            diagram: build(
                vec![ground(1), VertexKind::Joint, etage(1)],
                vec![edge(0, 2, 1), edge(0, 2, 1), edge(1, 2, 1), edge(1, 2, 1)],
                vec![end(2, 2), end(2, 1), end(2, 1)],
            ),
        },
        ReferenceDiagram {
            label: "two grounds, joint and etage with a weight-3 end",
            surface: SurfaceKind::M1,
            genus: 4,
            two_a: 4,
            two_b: 4,
            profile: "3,1",
            diagram: build(
                vec![ground(1), ground(1), VertexKind::Joint, etage(1)],
                vec![edge(0, 3, 1), edge(1, 3, 1), edge(2, 3, 1), edge(2, 3, 1)],
                vec![end(3, 3), end(3, 1)],
            ),
        },
        ReferenceDiagram {
            label: "ground with an own end, joint, two chained etages",
            surface: SurfaceKind::M0,
            genus: 4,
            two_a: 7,
            two_b: 4,
            profile: "2,1,1",
            diagram: build(
                vec![ground(1), VertexKind::Joint, etage(2), etage(1)],
                vec![edge(0, 2, 1), edge(1, 2, 1), edge(1, 3, 1), edge(2, 3, 2)],
                vec![end(0, 1), end(3, 2), end(3, 1)],
            ),
        },
        ReferenceDiagram {
            label: "ground, joint, two chained etages, odd class",
            surface: SurfaceKind::M1,
            genus: 4,
            two_a: 7,
            two_b: 3,
            profile: "2,1",
            diagram: build(
                vec![ground(1), VertexKind::Joint, etage(2), etage(1)],
                vec![edge(0, 2, 1), edge(1, 2, 1), edge(1, 3, 1), edge(2, 3, 2)],
                vec![end(3, 2), end(3, 1)],
            ),
        },
    ]
}

fn reference_catalogue() -> (bool, Vec<String>) {
    use crate::canonical::canonical_form;
    let mut details = Vec::new();
    let mut ok = true;

    for case in reference_diagrams() {
        let d = &case.diagram;
        let class = HomologyClass::new(
            HalfInt::from_doubled(case.two_a),
            HalfInt::from_doubled(case.two_b),
        );
        let profile: Partition = case.profile.parse().unwrap();
        let mut good = d.genus() == case.genus
            && d.homology_class() == class
            && d.tangency_profile() == profile
            && d.validate(case.surface).is_ok();
        if good {
            let listed = enumerate_diagrams(case.surface, case.genus, class, &profile)
                .map(|all| all.iter().any(|x| canonical_form(x) == canonical_form(d)))
                .unwrap_or(false);
            good = listed;
        }
        if !good {
            ok = false;
            details.push(format!("reference diagram fails: {}", case.label));
        }
    }
    if ok {
        details.push("all six reference diagrams verified and re-enumerated".to_string());
    }

    let count = |surface, two_a: i64, profile: &str| {
        let profile: Partition = profile.parse().unwrap();
        let class = HomologyClass::new(
            HalfInt::from_doubled(two_a),
            HalfInt::from_doubled(profile.norm() as i64),
        );
        enumerate_diagrams(surface, 2, class, &profile)
            .map(|v| v.len())
            .unwrap_or(usize::MAX)
    };
    let expected: [(i64, &str, usize, usize); 4] = [
        (2, "1,1", 1, 1),
        (3, "1,1", 2, 0),
        (4, "1,1", 5, 5),
        (3, "1,1,1,1", 6, 0),
    ];
    for (two_a, profile, m0, m1) in expected {
        let got = (
            count(SurfaceKind::M0, two_a, profile),
            count(SurfaceKind::M1, two_a, profile),
        );
        if got != (m0, m1) {
            ok = false;
            details.push(format!(
                "genus-2 catalogue 2a={two_a} profile {profile}: expected {m0}/{m1}, got {}/{}",
                got.0, got.1
            ));
        }
    }
    if ok {
        details.push("genus-2 catalogue counts match".to_string());
    }
    (ok, details)
}

fn minor_census() -> (bool, Vec<String>) {
    let shapes = enumerate_bare_shapes(3, 2, 4, 12);
    let per_shape: Vec<(usize, usize, BTreeMap<BigInt, usize>, usize, usize, Option<String>)> =
        shapes
            .par_iter()
            .enumerate()
            .map(|(i, shape)| {
                let eg = build_extended(shape);
                let mut minors = 0usize;
                let mut nonzero = 0usize;
                let mut histogram: BTreeMap<BigInt, usize> = BTreeMap::new();
                let mut bad_class = 0usize;
                let mut bad_torsion = 0usize;
                let mut witness = None;
                for report in minor_analysis(&eg) {
                    minors += 1;
                    if report.determinant.is_zero() {
                        continue;
                    }
                    nonzero += 1;
                    let a = report.determinant.abs();
                    if a > BigInt::from(2) && witness.is_none() {
                        witness = Some(format!(
                            "shape {i} {:?} columns {:?} det {}",
                            shape.kinds, report.columns, report.determinant
                        ));
                    }
                    *histogram.entry(a).or_insert(0) += 1;
                    if !report.classification_ok {
                        bad_class += 1;
                    }
                    if !report.torsion_matches {
                        bad_torsion += 1;
                    }
                }
                (minors, nonzero, histogram, bad_class, bad_torsion, witness)
            })
            .collect();

    let mut minors = 0usize;
    let mut nonzero = 0usize;
    let mut histogram: BTreeMap<BigInt, usize> = BTreeMap::new();
    let mut bad_class = 0usize;
    let mut bad_torsion = 0usize;
    let mut witness: Option<String> = None;
    for (m, nz, h, bc, bt, w) in per_shape {
        minors += m;
        nonzero += nz;
        for (k, v) in h {
            *histogram.entry(k).or_insert(0) += v;
        }
        bad_class += bc;
        bad_torsion += bt;
        if witness.is_none() {
            witness = w;
        }
    }

    let out_of_range: usize = histogram
        .iter()
        .filter(|(k, _)| *k > &BigInt::from(2))
        .map(|(_, v)| v)
        .sum();
    let range_ok = out_of_range == 0;
    let class_ok = bad_class == 0;
    let torsion_ok = bad_torsion == 0;

    let mut details = vec![
        format!(
            "{} shapes, {} square selections, {} nonzero",
            shapes.len(),
            minors,
            nonzero
        ),
        format!(
            "determinant magnitudes: {}",
            histogram
                .iter()
                .map(|(k, v)| format!("{k}:{v}"))
                .collect::<Vec<_>>()
                .join(" ")
        ),
        format!(
            "sub-claim: every nonzero determinant lies in {{1,2}}: {range_ok} ({out_of_range} outside)"
        ),
        format!("sub-claim: tree/cycle classification of nonzero selections: {class_ok}"),
        format!("sub-claim: cokernel matches the order-2 torsion prediction: {torsion_ok}"),
    ];
    if let Some(w) = witness {
        details.push(format!("first out-of-range selection: {w}"));
        details.push(
            "several disjoint torsion components multiply; the product of their \
             order-2 determinants leaves {1,2} while the componentwise claims hold"
                .to_string(),
        );
    }
    (range_ok && class_ok && torsion_ok, details)
}

fn factorized_series() -> (bool, Vec<String>) {
    let order = 20;
    let mut details = Vec::new();
    let mut ok = true;
    let mut shapes_checked = 0usize;

    let mut requests: Vec<(SurfaceKind, usize, &str)> = Vec::new();
    for surface in SurfaceKind::BOTH {
        for genus in 1..=2usize {
            for profile in ["1", "2", "1,1", "2,1"] {
                requests.push((surface, genus, profile));
            }
        }
    }
    requests.push((SurfaceKind::M0, 3, "1,1"));
    for (surface, genus, profile_text) in requests {
        let profile: Partition = profile_text.parse().unwrap();
        for shape in enumerate_weighted_shapes(surface, genus, &profile) {
            for (fixed, free) in profile.splits() {
                let direct =
                    per_diagram_series(surface, &shape, &fixed, &free, Convention::ValMinusOne, order);
                let factored =
                    factorized_form(surface, &shape, &fixed, &free, Convention::ValMinusOne, order);
                let matches = match (&direct, &factored) {
                    (Ok(a), Ok(b)) => series_equal(a, b).is_none(),
                    _ => false,
                };
                if !matches {
                    ok = false;
                    details.push(format!(
                        "factorization fails: {surface} g={genus} profile {profile_text} split ({fixed};{free})"
                    ));
                }
            }
            shapes_checked += 1;
        }
    }
    details.insert(
        0,
        format!("{shapes_checked} shapes factorized to order {order}"),
    );

    let mut generators = Vec::new();
    for k in 0..=3usize {
        generators.push((format!("D^{k}G2(y^2)"), g2(order).derive_n(k).substitute_power(2)));
        generators.push((format!("D^{k}H0"), h_even(order).derive_n(k)));
        generators.push((format!("D^{k}H1"), h_odd(order).derive_n(k)));
    }
    for (surface, genus, free_text) in [
        (SurfaceKind::M0, 1, "1,1"),
        (SurfaceKind::M1, 1, "1"),
        (SurfaceKind::M0, 2, "1,1"),
    ] {
        let free: Partition = free_text.parse().unwrap();
        let series = generating_series(
            surface,
            genus,
            &Partition::empty(),
            &free,
            Convention::ValMinusOne,
            order,
        )
        .unwrap();
        let basis = generator_products(&generators, genus, order);
        match span_check(&series, &basis) {
            Ok(cert) => details.push(format!(
                "assembled series {surface} g={genus} nu=({free_text}) lies in the generator span (rank {})",
                cert.rank
            )),
            Err(e) => {
                ok = false;
                details.push(format!(
                    "assembled series {surface} g={genus} nu=({free_text}) outside span: {e}"
                ));
            }
        }
    }
    (ok, details)
}

fn polynomiality_fits() -> (bool, Vec<String>) {
    let mut details = Vec::new();
    let mut ok = true;

    for name in ["ground", "ground-etage", "one-end"] {
        let family = ray_family(name).unwrap();
        let ts: Vec<i64> = (0..16).collect();
        let values = family.sample(&ts);
        match fit_on_ray(&ts, &values, 4, 2) {
            Ok(fit) if fit.single.is_some() => {
                details.push(format!("family {name}: single polynomial, degree {}",
                    fit.single.as_ref().unwrap().len().saturating_sub(1)));
                if !fresh_points_match(&family, &fit, 16) {
                    ok = false;
                    details.push(format!("family {name}: fresh-point mismatch"));
                }
            }
            Ok(_) => {
                ok = false;
                details.push(format!("family {name}: expected a single polynomial"));
            }
            Err(e) => {
                ok = false;
                details.push(format!("family {name}: {e}"));
            }
        }
    }

    for surface in SurfaceKind::BOTH {
        let mut family = ray_family("parallel-grounds").unwrap();
        family.surface = surface;
        let ts: Vec<i64> = (0..24).collect();
        let values = family.sample(&ts);
        match fit_on_ray(&ts, &values, 9, 2) {
            Ok(fit) => {
                if fit.single.is_some() {
                    ok = false;
                    details.push(format!(
                        "family parallel-grounds on {surface}: unexpectedly a single polynomial"
                    ));
                } else {
                    details.push(format!(
                        "family parallel-grounds on {surface}: rejects a single polynomial, fits per parity class"
                    ));
                }
                if !fresh_points_match(&family, &fit, 24) {
                    ok = false;
                    details.push(format!(
                        "family parallel-grounds on {surface}: fresh-point mismatch"
                    ));
                }
            }
            Err(e) => {
                ok = false;
                details.push(format!("family parallel-grounds on {surface}: {e}"));
            }
        }
    }
    (ok, details)
}

fn fresh_points_match(
    family: &RayFamily,
    fit: &crate::regularity::QuasiPolynomialFit,
    from: i64,
) -> bool {
    (from..from + 100).all(|t| fit.evaluate(t) == family.value_at(t))
}

struct SplitMix(u64);

impl SplitMix {
    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    fn below(&mut self, n: u64) -> u64 {
        self.next() % n
    }
}

fn cross_path_equality() -> (bool, Vec<String>) {
    let mut rng = SplitMix(0x746d6f6562697573);
    let mut details = Vec::new();
    let mut ok = true;
    let mut done = 0usize;
    while done < 20 {
        let surface = if rng.below(2) == 0 {
            SurfaceKind::M0
        } else {
            SurfaceKind::M1
        };
        let genus = 1 + rng.below(3) as usize;
        let two_a = 1 + rng.below(4) as i64;
        let two_b = 1 + rng.below(4) as i64;
        if (two_b - surface.delta() * two_a) % 2 != 0 {
            continue;
        }
        let partitions = Partition::all_of(two_b as u64);
        let profile = partitions[rng.below(partitions.len() as u64) as usize].clone();
        let splits = profile.splits();
        let (fixed, free) = splits[rng.below(splits.len() as u64) as usize].clone();
        let convention = if rng.below(2) == 0 {
            Convention::ValMinusOne
        } else {
            Convention::Val
        };
        done += 1;
        let a = HalfInt::from_doubled(two_a);
        let direct = invariant(surface, genus, a, &fixed, &free, convention)
            .map(|inv| inv.classical);
        let via = invariant_via_weightings(surface, genus, a, &fixed, &free, convention);
        match (direct, via) {
            (Ok(x), Ok(y)) if x == y => details.push(format!(
                "{surface} g={genus} 2a={two_a} ({fixed};{free}) {convention:?}: {}",
                display_rational(&x)
            )),
            (direct, via) => {
                ok = false;
                details.push(format!(
                    "paths disagree: {surface} g={genus} 2a={two_a} ({fixed};{free}) {convention:?}: {direct:?} vs {via:?}"
                ));
            }
        }
    }
    (ok, details)
}

fn determinism_payload() -> String {
    let mut out = String::new();
    let inv = invariant(
        SurfaceKind::M0,
        2,
        HalfInt::from_doubled(4),
        &Partition::empty(),
        &"1,1".parse().unwrap(),
        Convention::ValMinusOne,
    )
    .unwrap();
    out.push_str(&serde_json::to_string(&inv.to_json()).unwrap());
    let series = generating_series(
        SurfaceKind::M1,
        1,
        &Partition::empty(),
        &"1".parse().unwrap(),
        Convention::ValMinusOne,
        10,
    )
    .unwrap();
    for n in 0..=10 {
        out.push_str(&display_rational(&series.coeff(n)));
        out.push(';');
    }
    let diagrams = enumerate_diagrams(
        SurfaceKind::M0,
        2,
        HomologyClass::new(HalfInt::from_doubled(4), HalfInt::from_doubled(2)),
        &"1,1".parse().unwrap(),
    )
    .unwrap();
    for d in &diagrams {
        out.push_str(&serde_json::to_string(d).unwrap());
    }
    out
}

fn worker_determinism() -> (bool, Vec<String>) {
    let mut outputs = Vec::new();
    for jobs in [1usize, 4, 8] {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .unwrap();
        outputs.push((jobs, pool.install(determinism_payload)));
    }
    let ok = outputs.iter().all(|(_, s)| s == &outputs[0].1);
    let details = vec![format!(
        "payload of {} bytes identical across workers {:?}: {ok}",
        outputs[0].1.len(),
        outputs.iter().map(|(j, _)| *j).collect::<Vec<_>>()
    )];
    (ok, details)
}
