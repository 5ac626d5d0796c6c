use crate::arith::{divisors, sigma1, sigma1_tilde};
use crate::canonical::aut_order;
use crate::diagram::{FloorDiagram, HomologyClass, SurfaceKind, VertexKind};
use crate::enumerate::{enumerate_diagrams, EnumerateError};
use crate::exact::{as_integer, display_rational, rat, rat_big, BigInt, BigRational};
use crate::half_int::HalfInt;
use crate::marking::{enumerate_marking_classes, Cell, MarkingClass, MarkingError};
use crate::partition::Partition;
use crate::qpoly::LaurentPolynomial;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

/// Exponent convention for the per-floor factors. The degree of a
/// floor enters with exponent valence minus one by default; the `Val`
/// toggle raises it to the full valence, which multiplies every floor
/// factor by the floor degree.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
pub enum Convention {
    #[default]
    #[serde(rename = "val-1")]
    ValMinusOne,
    #[serde(rename = "val")]
    Val,
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Convention::ValMinusOne => write!(f, "val-1"),
            Convention::Val => write!(f, "val"),
        }
    }
}

impl FromStr for Convention {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "val-1" | "val_minus_one" | "valminusone" => Ok(Convention::ValMinusOne),
            "val" => Ok(Convention::Val),
            other => Err(format!("unknown convention `{other}`: expected val-1 or val")),
        }
    }
}

impl Convention {
    pub const BOTH: [Convention; 2] = [Convention::ValMinusOne, Convention::Val];
}

/// Upper-floor factor: a^(val-1) sigma1(a) times the product of the
/// adjacent elevator weights.
pub fn etage_multiplicity(degree: u32, weights: &[u32], convention: Convention) -> BigInt {
    assert!(degree >= 1, "upper floor degree must be positive");
    assert!(!weights.is_empty(), "floor without elevators");
    let exponent = weights.len() as u32 - 1 + matches!(convention, Convention::Val) as u32;
    let w: BigInt = weights.iter().map(|&w| BigInt::from(w)).product();
    BigInt::from(degree).pow(exponent) * BigInt::from(sigma1(degree as u64)) * w
}

/// Ground-floor factor for doubled degree `2a`: 2 (2a)^(val-1)
/// sigma1~(2a) times the weight product; under `Val` the leading 2 and
/// the extra degree factor combine into (2a)^val.
pub fn ground_multiplicity(doubled_degree: u32, weights: &[u32], convention: Convention) -> BigInt {
    assert!(doubled_degree >= 1, "ground degree must be positive");
    assert!(!weights.is_empty(), "floor without elevators");
    let val = weights.len() as u32;
    let w: BigInt = weights.iter().map(|&w| BigInt::from(w)).product();
    let base = BigInt::from(doubled_degree);
    let tilde = BigInt::from(sigma1_tilde(doubled_degree as u64));
    match convention {
        Convention::ValMinusOne => BigInt::from(2) * base.pow(val - 1) * tilde * w,
        Convention::Val => base.pow(val) * tilde * w,
    }
}

/// Refined upper-floor factor: the sum over divisors k of the degree
/// of k^(val-1) times the product of symmetrized q-integers
/// [w * a/k]_q; specializes to `etage_multiplicity` at q = 1.
pub fn etage_multiplicity_q(
    degree: u32,
    weights: &[u32],
    convention: Convention,
) -> LaurentPolynomial {
    assert!(degree >= 1, "upper floor degree must be positive");
    assert!(!weights.is_empty(), "floor without elevators");
    let exponent = weights.len() as u32 - 1;
    let mut total = LaurentPolynomial::zero();
    for k in divisors(degree as u64) {
        let quotient = (degree as u64 / k) as u32;
        let mut term = LaurentPolynomial::constant(rat_big(BigInt::from(k).pow(exponent)));
        for &w in weights {
            term = &term * &LaurentPolynomial::q_analog(w * quotient);
        }
        total += &term;
    }
    match convention {
        Convention::ValMinusOne => total,
        Convention::Val => total.scale(&rat(degree as i64)),
    }
}

/// Refined ground-floor factor for doubled degree `2a`: twice the sum
/// over odd divisors k of 2a of k^(val-1) times the product of
/// [w * 2a/k]_q; under `Val` the prefactor becomes the degree times 2,
/// i.e. the doubled degree.
pub fn ground_multiplicity_q(
    doubled_degree: u32,
    weights: &[u32],
    convention: Convention,
) -> LaurentPolynomial {
    assert!(doubled_degree >= 1, "ground degree must be positive");
    assert!(!weights.is_empty(), "floor without elevators");
    let exponent = weights.len() as u32 - 1;
    let mut total = LaurentPolynomial::zero();
    for k in divisors(doubled_degree as u64) {
        if k % 2 == 0 {
            continue;
        }
        let quotient = (doubled_degree as u64 / k) as u32;
        let mut term = LaurentPolynomial::constant(rat_big(BigInt::from(k).pow(exponent)));
        for &w in weights {
            term = &term * &LaurentPolynomial::q_analog(w * quotient);
        }
        total += &term;
    }
    let prefactor = match convention {
        Convention::ValMinusOne => rat(2),
        Convention::Val => rat(doubled_degree as i64),
    };
    total.scale(&prefactor)
}

/// Product of the classical floor factors of `d`.
pub fn floor_factor(d: &FloorDiagram, convention: Convention) -> BigInt {
    let mut acc = BigInt::from(1);
    for (v, kind) in d.vertices().iter().enumerate() {
        let ws = d.elevator_weights_at(v);
        match kind {
            VertexKind::Etage { degree } => {
                acc *= etage_multiplicity(*degree, &ws, convention);
            }
            VertexKind::Ground { degree } => {
                acc *= ground_multiplicity(degree.doubled() as u32, &ws, convention);
            }
            VertexKind::Joint => {}
        }
    }
    acc
}

/// Product of the refined floor factors of `d`.
pub fn floor_factor_q(d: &FloorDiagram, convention: Convention) -> LaurentPolynomial {
    let mut acc = LaurentPolynomial::one();
    for (v, kind) in d.vertices().iter().enumerate() {
        let ws = d.elevator_weights_at(v);
        match kind {
            VertexKind::Etage { degree } => {
                acc = &acc * &etage_multiplicity_q(*degree, &ws, convention);
            }
            VertexKind::Ground { degree } => {
                acc = &acc * &ground_multiplicity_q(degree.doubled() as u32, &ws, convention);
            }
            VertexKind::Joint => {}
        }
    }
    acc
}

/// Product of the weights of the elevators (bounded edges and ends)
/// left unmarked by `class`.
pub(crate) fn unmarked_weight_product(d: &FloorDiagram, class: &MarkingClass) -> BigInt {
    let marked: BTreeSet<Cell> = class.marked.iter().copied().collect();
    let mut acc = BigInt::from(1);
    for (i, e) in d.edges().iter().enumerate() {
        if !marked.contains(&Cell::Edge(i)) {
            acc *= BigInt::from(e.weight);
        }
    }
    for (i, e) in d.ends().iter().enumerate() {
        if !marked.contains(&Cell::End(i)) {
            acc *= BigInt::from(e.weight);
        }
    }
    acc
}

/// Multiplicity of one marking map in `class`: 2^(cycle components)
/// divided by the automorphism order, times the floor factors and the
/// unmarked elevator weights. Every map in a class has the same value.
pub fn marked_multiplicity(
    d: &FloorDiagram,
    class: &MarkingClass,
    convention: Convention,
) -> BigRational {
    let num = BigInt::from(2).pow(class.cycle_components as u32)
        * floor_factor(d, convention)
        * unmarked_weight_product(d, class);
    BigRational::new(num, BigInt::from(aut_order(d)))
}

/// Refined counterpart of `marked_multiplicity`; equals it at q = 1.
pub fn marked_multiplicity_q(
    d: &FloorDiagram,
    class: &MarkingClass,
    convention: Convention,
) -> LaurentPolynomial {
    let scalar = BigRational::new(
        BigInt::from(2).pow(class.cycle_components as u32) * unmarked_weight_product(d, class),
        BigInt::from(aut_order(d)),
    );
    floor_factor_q(d, convention).scale(&scalar)
}

/// Classical and refined totals of one diagram over all its marking
/// classes, with the per-map multiplicities summed map by map.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DiagramContribution {
    pub classical: BigRational,
    pub refined: LaurentPolynomial,
    pub class_count: usize,
    pub marking_maps: u64,
}

pub fn diagram_contribution(
    d: &FloorDiagram,
    fixed: &Partition,
    free: &Partition,
    convention: Convention,
) -> Result<DiagramContribution, MarkingError> {
    let classes = enumerate_marking_classes(d, fixed, free)?;
    let mut scalar = BigInt::from(0);
    let mut marking_maps = 0u64;
    for class in &classes {
        scalar += BigInt::from(class.extension_count)
            * BigInt::from(2).pow(class.cycle_components as u32)
            * unmarked_weight_product(d, class);
        marking_maps += class.extension_count;
    }
    let aut = BigInt::from(aut_order(d));
    let classical = BigRational::new(&scalar * floor_factor(d, convention), aut.clone());
    let refined = floor_factor_q(d, convention).scale(&BigRational::new(scalar, aut));
    Ok(DiagramContribution {
        classical,
        refined,
        class_count: classes.len(),
        marking_maps,
    })
}

/// Number of ways to attach the distinct fixed boundary points to a
/// chosen end set: the product of factorials of the part
/// multiplicities of the fixed partition.
fn fixed_slot_multiplier(fixed: &Partition) -> BigInt {
    BigInt::from(fixed.symmetry_order())
}

/// An aggregated count: the classical number and its q-refinement,
/// with enumeration bookkeeping.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Invariant {
    pub surface: SurfaceKind,
    pub genus: usize,
    pub class: HomologyClass,
    pub fixed: Partition,
    pub free: Partition,
    pub convention: Convention,
    pub classical: BigRational,
    pub refined: LaurentPolynomial,
    pub diagram_count: usize,
    pub marking_count: u64,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum InvariantError {
    #[error(transparent)]
    Enumerate(#[from] EnumerateError),
    #[error(transparent)]
    Marking(#[from] MarkingError),
}

/// Counts curves of the given genus and section degree with tangency
/// conditions `fixed` (at chosen boundary points) and `free`; the
/// fiber degree is read off the profiles. Sums the marked
/// multiplicities over all diagrams and marking maps, times the
/// assignment count of the fixed boundary points.
pub fn invariant(
    surface: SurfaceKind,
    genus: usize,
    a: HalfInt,
    fixed: &Partition,
    free: &Partition,
    convention: Convention,
) -> Result<Invariant, InvariantError> {
    let profile = fixed.merge(free);
    let b = HalfInt::from_doubled(profile.norm() as i64);
    let class = HomologyClass::new(a, b);
    let diagrams = enumerate_diagrams(surface, genus, class, &profile)?;
    let contributions = diagrams
        .par_iter()
        .map(|d| diagram_contribution(d, fixed, free, convention))
        .collect::<Result<Vec<_>, _>>()?;
    let mut classical = rat(0);
    let mut refined = LaurentPolynomial::zero();
    let mut marking_count = 0u64;
    for c in contributions {
        classical += c.classical;
        refined += &c.refined;
        marking_count += c.marking_maps;
    }
    let multiplier = rat_big(fixed_slot_multiplier(fixed));
    classical *= &multiplier;
    refined = refined.scale(&multiplier);
    Ok(Invariant {
        surface,
        genus,
        class,
        fixed: fixed.clone(),
        free: free.clone(),
        convention,
        classical,
        refined,
        diagram_count: diagrams.len(),
        marking_count,
    })
}

impl Invariant {
    /// The classical count as an integer, when integral.
    pub fn classical_integer(&self) -> Option<BigInt> {
        as_integer(&self.classical)
    }

    /// Result document: N, the refined coefficients by exponent, and
    /// the enumeration counts.
    pub fn to_json(&self) -> serde_json::Value {
        let n = match self.classical_integer() {
            Some(n) => match i64::try_from(&n) {
                Ok(small) => serde_json::json!(small),
                Err(_) => serde_json::json!(n.to_string()),
            },
            None => serde_json::json!(display_rational(&self.classical)),
        };
        let bg: Vec<serde_json::Value> = self
            .refined
            .terms()
            .map(|(e, c)| {
                let coef = match as_integer(c).map(|i| i64::try_from(&i)) {
                    Some(Ok(small)) => serde_json::json!(small),
                    _ => serde_json::json!(display_rational(c)),
                };
                serde_json::json!({ "exp": e.to_string(), "coef": coef })
            })
            .collect();
        serde_json::json!({
            "surface": self.surface.to_string(),
            "genus": self.genus,
            "a": self.class.a.to_string(),
            "b": self.class.b.to_string(),
            "mu": self.fixed.parts(),
            "nu": self.free.parts(),
            "N": n,
            "BG": bg,
            "diagram_count": self.diagram_count,
            "marking_count": self.marking_count,
            "convention": self.convention.to_string(),
        })
    }
}

/// Direct genus-1 count with profile 1^(2b): (2a)^(2b) times the sum
/// of sigma1~(2a) when 2b - 2*delta*a is even and sigma1(a) when both
/// class coordinates are integers.
pub fn genus_one_closed_form(surface: SurfaceKind, a: HalfInt, b: HalfInt) -> BigInt {
    let two_a = a.doubled();
    let two_b = b.doubled();
    assert!(two_a >= 1 && two_b >= 1, "class coordinates must be positive");
    let mut sum = BigInt::from(0);
    if (two_b - surface.delta() * two_a) % 2 == 0 {
        sum += BigInt::from(sigma1_tilde(two_a as u64));
    }
    if let (Some(ai), Some(_)) = (a.as_integer(), b.as_integer()) {
        sum += BigInt::from(sigma1(ai as u64));
    }
    BigInt::from(two_a).pow(two_b as u32) * sum
}
