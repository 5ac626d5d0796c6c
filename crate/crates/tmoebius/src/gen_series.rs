use crate::canonical::{canonical_form, CanonicalForm};
use crate::diagram::SurfaceKind;
use crate::enumerate::{degree_assignments, ShapeKind, WeightedShape};
use crate::exact::{display_rational, rat, rat_big, BigInt, BigRational};
use crate::half_int::HalfInt;
use crate::marking::{enumerate_marking_classes, MarkingError};
use crate::multiplicity::{
    diagram_contribution, invariant, unmarked_weight_product, Convention, InvariantError,
};
use crate::partition::Partition;
use crate::power_series::{g2, h, h_even, h_odd, TruncatedSeries};
use num_traits::Zero;
use std::collections::BTreeSet;

/// Series of the classical counts over the section degree: the
/// coefficient of y^n is the invariant at doubled section degree
/// n = 2a, for fixed surface, genus, and tangency profiles.
pub fn generating_series(
    surface: SurfaceKind,
    genus: usize,
    fixed: &Partition,
    free: &Partition,
    convention: Convention,
    order: usize,
) -> Result<TruncatedSeries, InvariantError> {
    let mut s = TruncatedSeries::zero(order);
    for two_a in 1..=order {
        let inv = invariant(
            surface,
            genus,
            HalfInt::from_doubled(two_a as i64),
            fixed,
            free,
            convention,
        )?;
        s.set_coeff(two_a, inv.classical);
    }
    Ok(s)
}

fn shape_ground_sums(shape: &WeightedShape) -> Vec<i64> {
    (0..shape.kinds.len())
        .map(|v| {
            if shape.kinds[v] == ShapeKind::Ground {
                shape
                    .elevator_weights_at(v)
                    .iter()
                    .map(|&w| w as i64)
                    .sum()
            } else {
                0
            }
        })
        .collect()
}

/// Contribution of a single degree-free shape to the generating
/// series: the classical totals of its degree assignments, one
/// representative per isomorphism class, weighted like `invariant`.
pub fn per_diagram_series(
    surface: SurfaceKind,
    shape: &WeightedShape,
    fixed: &Partition,
    free: &Partition,
    convention: Convention,
    order: usize,
) -> Result<TruncatedSeries, MarkingError> {
    let ground_sums = shape_ground_sums(shape);
    let slot = rat_big(BigInt::from(fixed.symmetry_order()));
    let mut s = TruncatedSeries::zero(order);
    for two_a in 1..=order {
        let mut seen: BTreeSet<CanonicalForm> = BTreeSet::new();
        let mut total = rat(0);
        for assignment in
            degree_assignments(&shape.kinds, &ground_sums, two_a as i64, surface)
        {
            let d = shape.with_degrees(&assignment);
            if seen.insert(canonical_form(&d)) {
                total += diagram_contribution(&d, fixed, free, convention)?.classical;
            }
        }
        s.set_coeff(two_a, total * &slot);
    }
    Ok(s)
}

/// Degree-independent prefactor of a shape in the factorized series:
/// the marking totals over the shape automorphisms, the elevator
/// weights adjacent to each floor, the fixed-point slot factor, and
/// one factor of 2 per ground floor under the default convention.
pub fn shape_weight(
    shape: &WeightedShape,
    fixed: &Partition,
    free: &Partition,
    convention: Convention,
) -> Result<BigRational, MarkingError> {
    let d = shape.placeholder_diagram();
    let classes = enumerate_marking_classes(&d, fixed, free)?;
    let mut scalar = BigInt::from(0);
    for class in &classes {
        scalar += BigInt::from(class.extension_count)
            * BigInt::from(2).pow(class.cycle_components as u32)
            * unmarked_weight_product(&d, class);
    }
    let mut w = BigRational::new(
        scalar * BigInt::from(fixed.symmetry_order()),
        BigInt::from(shape.aut_order()),
    );
    for v in 0..shape.kinds.len() {
        if shape.kinds[v] == ShapeKind::Joint {
            continue;
        }
        for weight in shape.elevator_weights_at(v) {
            w *= rat(weight as i64);
        }
    }
    if convention == Convention::ValMinusOne {
        let grounds = shape.grounds().len() as u32;
        w *= rat_big(BigInt::from(2).pow(grounds));
    }
    Ok(w)
}

/// The same shape contribution assembled as a product: the shape
/// weight times one derived generator per floor. Upper floors of
/// valence v contribute the (v-1)-fold derivative of the sigma1
/// generator in y^2; ground floors contribute derivatives of the
/// odd-quotient generator, restricted to the parity of their elevator
/// weight sum on the odd surface. The `Val` convention raises each
/// derivative order by one.
pub fn factorized_form(
    surface: SurfaceKind,
    shape: &WeightedShape,
    fixed: &Partition,
    free: &Partition,
    convention: Convention,
    order: usize,
) -> Result<TruncatedSeries, MarkingError> {
    let w = shape_weight(shape, fixed, free, convention)?;
    let extra = matches!(convention, Convention::Val) as usize;
    let mut acc = TruncatedSeries::one(order).scale(&w);
    for v in shape.etages() {
        let k = shape.elevator_weights_at(v).len() - 1 + extra;
        acc = &acc * &g2(order).derive_n(k).substitute_power(2);
    }
    for v in shape.grounds() {
        let ws = shape.elevator_weights_at(v);
        let k = ws.len() - 1 + extra;
        let base = match surface {
            SurfaceKind::M0 => h(order),
            SurfaceKind::M1 => {
                if ws.iter().sum::<u32>() % 2 == 0 {
                    h_even(order)
                } else {
                    h_odd(order)
                }
            }
        };
        acc = &acc * &base.derive_n(k);
    }
    Ok(acc)
}

/// Exact membership certificate: the coefficients expressing the
/// target in the given basis, with the size of the linear system that
/// pinned them down.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SpanCertificate {
    pub combination: Vec<(String, BigRational)>,
    pub equations: usize,
    pub unknowns: usize,
    pub rank: usize,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum SpanFailure {
    #[error(
        "outside the span: best fit on the pivot equations first mismatches \
         at y^{exponent} with residual {residual}"
    )]
    OutsideSpan { exponent: usize, residual: String },
}

/// Decides whether `target` is an exact linear combination of the
/// named basis series, coefficient by coefficient up to the common
/// truncation order. On failure the witness exponent is reported.
pub fn span_check(
    target: &TruncatedSeries,
    basis: &[(String, TruncatedSeries)],
) -> Result<SpanCertificate, SpanFailure> {
    let order = target.order();
    let cols = basis.len();
    let rows = order + 1;
    let mut m: Vec<Vec<BigRational>> = (0..rows)
        .map(|n| {
            let mut row: Vec<BigRational> =
                basis.iter().map(|(_, s)| s.coeff(n)).collect();
            row.push(target.coeff(n));
            row
        })
        .collect();

    let mut pivot_cols = Vec::new();
    let mut row = 0usize;
    for col in 0..cols {
        let Some(p) = (row..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = rat(1) / m[row][col].clone();
        for x in m[row].iter_mut() {
            *x *= &inv;
        }
        for r in 0..rows {
            if r != row && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for c in 0..=cols {
                    let sub = &factor * &m[row][c];
                    m[r][c] -= sub;
                }
            }
        }
        pivot_cols.push(col);
        row += 1;
        if row == rows {
            break;
        }
    }
    let rank = pivot_cols.len();

    let mut x = vec![rat(0); cols];
    for (r, &col) in pivot_cols.iter().enumerate() {
        x[col] = m[r][cols].clone();
    }
    let mut reconstructed = TruncatedSeries::zero(order);
    for (j, (_, s)) in basis.iter().enumerate() {
        if !x[j].is_zero() {
            reconstructed += &s.scale(&x[j]);
        }
    }
    for n in 0..=order {
        let residual = target.coeff(n) - reconstructed.coeff(n);
        if !residual.is_zero() {
            return Err(SpanFailure::OutsideSpan {
                exponent: n,
                residual: display_rational(&residual),
            });
        }
    }
    let combination = basis
        .iter()
        .zip(&x)
        .filter(|(_, c)| !c.is_zero())
        .map(|((name, _), c)| (name.clone(), c.clone()))
        .collect();
    Ok(SpanCertificate {
        combination,
        equations: rows,
        unknowns: cols,
        rank,
    })
}

/// All products of at most `max_factors` of the named generators,
/// with repetition, including the empty product.
pub fn generator_products(
    generators: &[(String, TruncatedSeries)],
    max_factors: usize,
    order: usize,
) -> Vec<(String, TruncatedSeries)> {
    let mut out = vec![("1".to_string(), TruncatedSeries::one(order))];
    let mut layer: Vec<(String, TruncatedSeries, usize)> =
        vec![("1".to_string(), TruncatedSeries::one(order), 0)];
    for _ in 0..max_factors {
        let mut next = Vec::new();
        for (name, series, start) in &layer {
            for (j, (gname, gseries)) in generators.iter().enumerate().skip(*start) {
                let pname = if name == "1" {
                    gname.clone()
                } else {
                    format!("{name}*{gname}")
                };
                let pseries = series * &gseries.truncate(order);
                out.push((pname.clone(), pseries.clone()));
                next.push((pname, pseries, j));
            }
        }
        layer = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::enumerate_weighted_shapes;

    fn profile(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn pinned_identity_between_generators() {
        let order = 100;
        let basis = vec![
            ("G2(y)".to_string(), g2(order)),
            ("G2(y^2)".to_string(), g2(order).substitute_power(2)),
        ];
        let cert = span_check(&h(order), &basis).unwrap();
        assert_eq!(
            cert.combination,
            vec![
                ("G2(y)".to_string(), rat(1)),
                ("G2(y^2)".to_string(), rat(-1))
            ]
        );
        assert_eq!(cert.rank, 2);
        assert_eq!(cert.equations, 101);
    }

    #[test]
    fn parity_parts_recover_the_full_generator() {
        let order = 60;
        let basis = vec![
            ("H0".to_string(), h_even(order)),
            ("H1".to_string(), h_odd(order)),
            ("G2(y^2)".to_string(), g2(order).substitute_power(2)),
        ];
        let cert = span_check(&g2(order), &basis).unwrap();
        assert_eq!(
            cert.combination,
            vec![
                ("H0".to_string(), rat(1)),
                ("H1".to_string(), rat(1)),
                ("G2(y^2)".to_string(), rat(1))
            ]
        );
    }

    #[test]
    fn outside_span_reports_a_witness() {
        let order = 10;
        let mut target = TruncatedSeries::zero(order);
        target.set_coeff(1, rat(1));
        let basis = vec![("G2(y^2)".to_string(), g2(order).substitute_power(2))];
        let err = span_check(&target, &basis).unwrap_err();
        assert_eq!(
            err,
            SpanFailure::OutsideSpan {
                exponent: 1,
                residual: "1".to_string()
            }
        );
    }

    #[test]
    fn per_diagram_matches_factorized_on_small_shapes() {
        let order = 12;
        for surface in SurfaceKind::BOTH {
            for genus in 1..=2usize {
                for prof in ["1", "2", "1,1", "2,1"] {
                    let p = profile(prof);
                    for shape in enumerate_weighted_shapes(surface, genus, &p) {
                        for (fixed, free) in p.splits() {
                            for convention in Convention::BOTH {
                                let direct = per_diagram_series(
                                    surface, &shape, &fixed, &free, convention, order,
                                )
                                .unwrap();
                                let product = factorized_form(
                                    surface, &shape, &fixed, &free, convention, order,
                                )
                                .unwrap();
                                assert_eq!(
                                    direct, product,
                                    "{surface} g={genus} prof={prof} mu={fixed} \
                                     nu={free} {convention:?}"
                                );
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn per_diagram_matches_factorized_at_higher_genus() {
        let order = 8;
        let p = profile("1,1");
        for shape in enumerate_weighted_shapes(SurfaceKind::M0, 3, &p) {
            let direct = per_diagram_series(
                SurfaceKind::M0,
                &shape,
                &Partition::empty(),
                &p,
                Convention::ValMinusOne,
                order,
            )
            .unwrap();
            let product = factorized_form(
                SurfaceKind::M0,
                &shape,
                &Partition::empty(),
                &p,
                Convention::ValMinusOne,
                order,
            )
            .unwrap();
            assert_eq!(direct, product);
        }
    }

    #[test]
    fn shapes_sum_to_the_generating_series() {
        let order = 8;
        for (surface, genus, prof) in [
            (SurfaceKind::M0, 1, "1,1"),
            (SurfaceKind::M1, 1, "1"),
            (SurfaceKind::M0, 2, "1,1"),
        ] {
            let p = profile(prof);
            let total = generating_series(
                surface,
                genus,
                &Partition::empty(),
                &p,
                Convention::ValMinusOne,
                order,
            )
            .unwrap();
            let mut sum = TruncatedSeries::zero(order);
            for shape in enumerate_weighted_shapes(surface, genus, &p) {
                sum += &per_diagram_series(
                    surface,
                    &shape,
                    &Partition::empty(),
                    &p,
                    Convention::ValMinusOne,
                    order,
                )
                .unwrap();
            }
            assert_eq!(sum, total, "{surface} g={genus} {prof}");
        }
    }

    #[test]
    fn genus_one_series_is_an_explicit_combination() {
        let order = 16;
        let p = profile("1,1");
        let target = generating_series(
            SurfaceKind::M0,
            1,
            &Partition::empty(),
            &p,
            Convention::ValMinusOne,
            order,
        )
        .unwrap();
        // ground shape of valence 2 and the joint family: one derived
        // generator each, weights 2 and 4
        let basis = vec![
            ("DH".to_string(), h(order).derive_n(1)),
            (
                "DG2(y^2)".to_string(),
                g2(order).derive_n(1).substitute_power(2),
            ),
        ];
        let cert = span_check(&target, &basis).unwrap();
        assert_eq!(
            cert.combination,
            vec![
                ("DH".to_string(), rat(2)),
                ("DG2(y^2)".to_string(), rat(4))
            ]
        );
        // spot totals: 12 at a=1 and 48 at... the formula values
        assert_eq!(target.coeff(2), rat(12));
        assert_eq!(target.coeff(1), rat(2));
    }

    #[test]
    fn odd_surface_single_end_series_is_a_parity_part() {
        let order = 12;
        let p = profile("1");
        let target = generating_series(
            SurfaceKind::M1,
            1,
            &Partition::empty(),
            &p,
            Convention::ValMinusOne,
            order,
        )
        .unwrap();
        let basis = vec![
            ("H0".to_string(), h_even(order)),
            ("H1".to_string(), h_odd(order)),
        ];
        let cert = span_check(&target, &basis).unwrap();
        assert_eq!(cert.combination, vec![("H1".to_string(), rat(2))]);
    }

    #[test]
    fn even_surface_ground_series_has_both_parities() {
        // the even surface puts no parity condition on the section
        // degree of a single ground floor
        let order = 6;
        let p = profile("1,1");
        let shapes = enumerate_weighted_shapes(SurfaceKind::M0, 1, &p);
        let ground = shapes
            .iter()
            .find(|s| s.kinds == vec![ShapeKind::Ground])
            .unwrap();
        let s = per_diagram_series(
            SurfaceKind::M0,
            ground,
            &Partition::empty(),
            &p,
            Convention::ValMinusOne,
            order,
        )
        .unwrap();
        assert_eq!(s.coeff(1), rat(2));
        assert_eq!(s.coeff(2), rat(8));
        assert_eq!(s.coeff(3), rat(24));
    }

    #[test]
    fn off_grid_series_vanish() {
        // odd total end weight never occurs on the even surface
        let target = generating_series(
            SurfaceKind::M0,
            1,
            &Partition::empty(),
            &profile("1"),
            Convention::ValMinusOne,
            8,
        )
        .unwrap();
        assert!(target.is_zero());
        // integral fiber degree on the odd surface forces integral
        // section degree
        let target = generating_series(
            SurfaceKind::M1,
            1,
            &Partition::empty(),
            &profile("1,1"),
            Convention::ValMinusOne,
            8,
        )
        .unwrap();
        for n in (1..=7).step_by(2) {
            assert!(target.coeff(n).is_zero(), "y^{n}");
        }
        assert_eq!(target.coeff(2), rat(12));
        assert_eq!(target.coeff(4), rat(56));
    }

    #[test]
    fn generator_products_enumerate_multisets() {
        let order = 5;
        let gens = vec![
            ("A".to_string(), g2(order)),
            ("B".to_string(), h(order)),
        ];
        let prods = generator_products(&gens, 2, order);
        let names: Vec<&str> = prods.iter().map(|(n, _)| n.as_str()).collect();
        assert_eq!(names, vec!["1", "A", "B", "A*A", "A*B", "B*B"]);
        let ab = &prods[4].1;
        assert_eq!(ab, &(&g2(order) * &h(order)));
    }
}
