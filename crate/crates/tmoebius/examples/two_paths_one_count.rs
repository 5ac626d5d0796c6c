//! Computes the same counts twice: once through marked floor
//! diagrams, once through weightings of degree-free shapes, and
//! checks that the totals agree.

use tmoebius::diagram::SurfaceKind;
use tmoebius::half_int::HalfInt;
use tmoebius::multiplicity::Convention;
use tmoebius::partition::Partition;
use tmoebius::regularity::cross_check;

fn main() {
    let requests = [
        (SurfaceKind::M0, 1, 2, "", "1,1"),
        (SurfaceKind::M1, 1, 2, "1", "1"),
        (SurfaceKind::M0, 2, 4, "", "2,1,1"),
        (SurfaceKind::M1, 2, 3, "2,1", ""),
        (SurfaceKind::M0, 3, 4, "", "1,1"),
        (SurfaceKind::M1, 1, 4, "", "2,2"),
    ];
    for (surface, genus, two_a, mu, nu) in requests {
        let mu: Partition = mu.parse().expect("fixed parses");
        let nu: Partition = nu.parse().expect("free parses");
        for convention in [Convention::ValMinusOne, Convention::Val] {
            let (by_markings, by_weightings) = cross_check(
                surface,
                genus,
                HalfInt::from_doubled(two_a),
                &mu,
                &nu,
                convention,
            )
            .expect("request is consistent");
            assert_eq!(by_markings, by_weightings);
            println!(
                "{surface}  genus {genus}  2a={two_a}  mu {mu}  nu {nu}  {convention:?}: \
                 {by_markings} both ways",
            );
        }
    }
}
