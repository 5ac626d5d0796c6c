//! Samples weighting counts along rays of boundary data and fits them
//! exactly, either with one polynomial or with one polynomial per
//! residue class.

use tmoebius::exact::display_rational;
use tmoebius::regularity::{fit_on_ray, ray_family, RAY_FAMILY_NAMES};

fn main() {
    for name in RAY_FAMILY_NAMES {
        let family = ray_family(name).expect("family exists");
        let (degree_bound, samples) = if name == "parallel-grounds" {
            (9, 26)
        } else {
            (5, 18)
        };
        let ts: Vec<i64> = (0..samples).collect();
        let values = family.sample(&ts);
        println!(
            "family {name} on {}: base {:?} direction {:?}",
            family.surface, family.base, family.direction
        );
        let preview: Vec<String> = values.iter().take(8).map(display_rational).collect();
        println!("  counts: {} ...", preview.join(", "));
        match fit_on_ray(&ts, &values, degree_bound, 2) {
            Ok(fit) => match &fit.single {
                Some(poly) => println!(
                    "  one polynomial of degree {}: [{}]",
                    poly.len().saturating_sub(1),
                    poly.iter().map(display_rational).collect::<Vec<_>>().join(", ")
                ),
                None => {
                    for class in &fit.classes {
                        println!(
                            "  t = {} (mod 2), degree {}: [{}]",
                            class.residue,
                            class.coefficients.len().saturating_sub(1),
                            class
                                .coefficients
                                .iter()
                                .map(display_rational)
                                .collect::<Vec<_>>()
                                .join(", ")
                        );
                    }
                }
            },
            Err(e) => println!("  fit fails: {e}"),
        }
        println!();
    }
}
