//! Computes classical counts over a grid of classes and checks the
//! genus-1 values against the closed form.

use tmoebius::diagram::{HomologyClass, SurfaceKind};
use tmoebius::half_int::HalfInt;
use tmoebius::multiplicity::{genus_one_closed_form, invariant, Convention};
use tmoebius::partition::Partition;

fn main() {
    println!("genus 1, free simple tangencies, convention val:");
    println!("{:<4} {:<8} {:>12} {:>12}", "", "class", "count", "closed form");
    for surface in SurfaceKind::BOTH {
        for two_a in 1..=4i64 {
            for two_b in 1..=4i64 {
                if (two_b - surface.delta() * two_a) % 2 != 0 {
                    continue;
                }
                let a = HalfInt::from_doubled(two_a);
                let b = HalfInt::from_doubled(two_b);
                let nu = Partition::new(vec![1; two_b as usize]).expect("simple tangencies");
                let inv = invariant(surface, 1, a, &Partition::empty(), &nu, Convention::Val)
                    .expect("request is consistent");
                let closed = genus_one_closed_form(surface, a, b);
                assert_eq!(inv.classical_integer().expect("integer count"), closed);
                println!(
                    "{:<4} {:<8} {:>12} {:>12}",
                    surface.to_string(),
                    HomologyClass::new(a, b).to_string(),
                    inv.classical,
                    closed
                );
            }
        }
    }

    println!();
    println!("higher genus, convention val-1:");
    for (surface, genus, two_a, nu) in [
        (SurfaceKind::M0, 2, 4, "1,1"),
        (SurfaceKind::M0, 3, 4, "1,1"),
        (SurfaceKind::M1, 2, 4, "1,1,1,1"),
        (SurfaceKind::M1, 3, 3, "2,1"),
    ] {
        let nu: Partition = nu.parse().expect("profile parses");
        let inv = invariant(
            surface,
            genus,
            HalfInt::from_doubled(two_a),
            &Partition::empty(),
            &nu,
            Convention::ValMinusOne,
        )
        .expect("request is consistent");
        println!(
            "{surface}  genus {genus}  class {}  nu {nu}: N = {}  ({} diagrams, {} markings)",
            inv.class, inv.classical, inv.diagram_count, inv.marking_count
        );
    }
}
