//! Enumerates all floor diagrams for a few small requests and prints
//! their structure.

use tmoebius::diagram::{HomologyClass, SurfaceKind, VertexKind};
use tmoebius::enumerate::enumerate_diagrams;
use tmoebius::half_int::HalfInt;
use tmoebius::partition::Partition;

fn main() {
    let requests = [
        (SurfaceKind::M0, 2, 4, "1,1"),
        (SurfaceKind::M1, 2, 4, "1,1"),
        (SurfaceKind::M0, 2, 3, "1,1,1"),
        (SurfaceKind::M1, 2, 3, "1,1,1,1"),
    ];
    for (surface, genus, two_a, profile) in requests {
        let profile: Partition = profile.parse().expect("profile parses");
        let class = HomologyClass::new(
            HalfInt::from_doubled(two_a),
            HalfInt::from_doubled(profile.norm() as i64),
        );
        match enumerate_diagrams(surface, genus, class, &profile) {
            Ok(diagrams) => {
                println!(
                    "{surface}  genus {genus}  class {class}  profile {profile}: {} diagrams",
                    diagrams.len()
                );
                for (i, d) in diagrams.iter().enumerate() {
                    let kinds: Vec<String> = d
                        .vertices()
                        .iter()
                        .map(|v| match v {
                            VertexKind::Ground { degree } => format!("ground({degree})"),
                            VertexKind::Etage { degree } => format!("etage({degree})"),
                            VertexKind::Joint => "joint".to_string(),
                        })
                        .collect();
                    let edges: Vec<String> = d
                        .edges()
                        .iter()
                        .map(|e| format!("{}->{} w{}", e.tail, e.head, e.weight))
                        .collect();
                    let ends: Vec<String> = d
                        .ends()
                        .iter()
                        .map(|e| format!("{} w{}", e.vertex, e.weight))
                        .collect();
                    println!(
                        "  #{i}: [{}]  edges [{}]  ends [{}]",
                        kinds.join(", "),
                        edges.join(", "),
                        ends.join(", ")
                    );
                    d.validate(surface).expect("enumerated diagrams are valid");
                }
            }
            Err(e) => println!("{surface}  genus {genus}  class {class}: {e}"),
        }
        println!();
    }
}
