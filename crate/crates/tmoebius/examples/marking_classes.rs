//! Lists the marking classes of one diagram and assembles its
//! contribution to the count from them.

use tmoebius::diagram::{BoundedEdge, End, FloorDiagram, VertexKind};
use tmoebius::half_int::HalfInt;
use tmoebius::marking::enumerate_marking_classes;
use tmoebius::multiplicity::{diagram_contribution, Convention};
use tmoebius::partition::Partition;

fn main() {
    // A degree-1/2 ground floor under a degree-1 upper floor, linked by
    // two parallel weight-1 elevators; two weight-1 ends on top.
    let diagram = FloorDiagram::new(
        vec![
            VertexKind::Ground { degree: HalfInt::HALF },
            VertexKind::Etage { degree: 1 },
        ],
        vec![
            BoundedEdge { tail: 0, head: 1, weight: 1 },
            BoundedEdge { tail: 0, head: 1, weight: 1 },
        ],
        vec![End { vertex: 1, weight: 1 }, End { vertex: 1, weight: 1 }],
    )
    .expect("diagram is well formed");

    println!(
        "diagram: genus {}  class {}  profile {}",
        diagram.genus(),
        diagram.homology_class(),
        diagram.tangency_profile()
    );

    let fixed = Partition::empty();
    let free: Partition = "1,1".parse().expect("profile parses");
    let classes =
        enumerate_marking_classes(&diagram, &fixed, &free).expect("profile matches");
    println!("{} marking classes with mu = (), nu = (1,1):", classes.len());
    for (i, class) in classes.iter().enumerate() {
        let marked: Vec<String> = class.marked.iter().map(|c| c.to_string()).collect();
        println!(
            "  #{i}: marked {{{}}}  fixed ends {:?}  {} labelings  {} cycle components",
            marked.join(", "),
            class.fixed_ends,
            class.extension_count,
            class.cycle_components
        );
    }

    for convention in [Convention::ValMinusOne, Convention::Val] {
        let c = diagram_contribution(&diagram, &fixed, &free, convention)
            .expect("profile matches");
        println!(
            "{convention:?}: classical {}  refined {}  from {} marking maps",
            c.classical, c.refined, c.marking_maps
        );
    }
}
