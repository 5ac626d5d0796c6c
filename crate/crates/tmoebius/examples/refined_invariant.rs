//! Computes refined counts: symmetric Laurent polynomials in q that
//! specialize to the classical count at q = 1.

use tmoebius::diagram::SurfaceKind;
use tmoebius::half_int::HalfInt;
use tmoebius::multiplicity::{invariant, Convention};
use tmoebius::partition::Partition;

fn main() {
    for (surface, genus, two_a, mu, nu) in [
        (SurfaceKind::M0, 1, 2, "", "1,1"),
        (SurfaceKind::M1, 1, 2, "", "1,1"),
        (SurfaceKind::M0, 2, 4, "2", "1,1"),
        (SurfaceKind::M1, 2, 3, "", "2,1"),
        (SurfaceKind::M0, 3, 4, "", "1,1"),
    ] {
        let mu: Partition = mu.parse().expect("fixed parses");
        let nu: Partition = nu.parse().expect("free parses");
        let inv = invariant(
            surface,
            genus,
            HalfInt::from_doubled(two_a),
            &mu,
            &nu,
            Convention::ValMinusOne,
        )
        .expect("request is consistent");
        println!(
            "{surface}  genus {genus}  class {}  mu {mu}  nu {nu}",
            inv.class
        );
        println!("  BG(q)   = {}", inv.refined);
        println!("  BG(1)   = {}  (classical N = {})", inv.refined.eval_at_one(), inv.classical);
        println!("  palindromic: {}", inv.refined.is_palindromic());
        assert_eq!(inv.refined.eval_at_one(), inv.classical);
        assert!(inv.refined.is_palindromic());
        println!();
    }
}
