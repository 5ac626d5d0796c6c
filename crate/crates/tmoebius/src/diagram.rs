use crate::half_int::HalfInt;
use crate::partition::Partition;
use serde::{Deserialize, Serialize};
use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

/// The two twisted fibered surfaces, distinguished by the parity
/// `delta` of the twist.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub enum SurfaceKind {
    #[serde(rename = "m0")]
    M0,
    #[serde(rename = "m1")]
    M1,
}

impl SurfaceKind {
    pub fn delta(self) -> i64 {
        match self {
            SurfaceKind::M0 => 0,
            SurfaceKind::M1 => 1,
        }
    }

    pub const BOTH: [SurfaceKind; 2] = [SurfaceKind::M0, SurfaceKind::M1];
}

impl fmt::Display for SurfaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SurfaceKind::M0 => write!(f, "m0"),
            SurfaceKind::M1 => write!(f, "m1"),
        }
    }
}

impl FromStr for SurfaceKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "m0" | "0" => Ok(SurfaceKind::M0),
            "m1" | "1" => Ok(SurfaceKind::M1),
            other => Err(format!("unknown surface `{other}`: expected m0 or m1")),
        }
    }
}

/// Curve class a*E + b*F in the section/fiber basis; both coordinates
/// are half-integers.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct HomologyClass {
    pub a: HalfInt,
    pub b: HalfInt,
}

impl HomologyClass {
    pub fn new(a: HalfInt, b: HalfInt) -> Self {
        HomologyClass { a, b }
    }
}

impl fmt::Display for HomologyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}E+{}F", self.a, self.b)
    }
}

/// Vertex of a floor diagram. Ground floors carry a half-integer
/// degree, upper floors an integer degree, joints none.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum VertexKind {
    Ground { degree: HalfInt },
    Etage { degree: u32 },
    Joint,
}

impl VertexKind {
    pub fn is_floor(self) -> bool {
        !matches!(self, VertexKind::Joint)
    }

    /// Degree as a half-integer; zero for joints.
    pub fn degree(self) -> HalfInt {
        match self {
            VertexKind::Ground { degree } => degree,
            VertexKind::Etage { degree } => HalfInt::from_int(degree as i64),
            VertexKind::Joint => HalfInt::ZERO,
        }
    }
}

/// Bounded edge, oriented tail -> head, with a positive integer weight.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct BoundedEdge {
    pub tail: usize,
    pub head: usize,
    pub weight: u32,
}

/// Unbounded outgoing edge attached to `vertex`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct End {
    pub vertex: usize,
    pub weight: u32,
}

/// Oriented weighted graph recording the floors, joints, elevators and
/// unbounded elevators of a fibered tropical curve.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct FloorDiagram {
    vertices: Vec<VertexKind>,
    edges: Vec<BoundedEdge>,
    ends: Vec<End>,
}

/// Structural defect that prevents even building the graph.
#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum StructureError {
    #[error("edge {index} references vertex {vertex} out of range")]
    EdgeOutOfRange { index: usize, vertex: usize },
    #[error("end {index} references vertex {vertex} out of range")]
    EndOutOfRange { index: usize, vertex: usize },
    #[error("edge {index} is a loop at vertex {vertex}")]
    Loop { index: usize, vertex: usize },
    #[error("edge {index} has zero weight")]
    ZeroEdgeWeight { index: usize },
    #[error("end {index} has zero weight")]
    ZeroEndWeight { index: usize },
    #[error("vertex {index} has nonpositive degree")]
    NonPositiveDegree { index: usize },
    #[error("diagram has no vertices")]
    Empty,
    #[error("diagram has no floor")]
    NoFloor,
}

/// Violation of one of the defining conditions, checked by `validate`.
#[derive(Debug, PartialEq, Eq, Clone, Serialize)]
#[serde(tag = "condition", rename_all = "snake_case")]
pub enum ConditionViolation {
    /// The oriented graph has a directed cycle.
    DirectedCycle,
    /// The underlying graph is not connected.
    Disconnected,
    /// There is no unbounded edge.
    NoEnds,
    /// A ground floor has an incoming bounded edge.
    GroundIncoming { vertex: usize },
    /// Total elevator weight at a ground floor has the wrong parity
    /// for the surface.
    GroundParity { vertex: usize },
    /// Incoming and outgoing weights at an upper floor differ.
    EtageUnbalanced { vertex: usize },
    /// A joint has an incoming bounded edge.
    JointIncoming { vertex: usize },
    /// A joint does not have exactly two outgoing elevators.
    JointValence { vertex: usize, found: usize },
    /// The two elevators at a joint have different weights.
    JointWeights { vertex: usize },
    /// No floor is present.
    NoFloor,
}

impl FloorDiagram {
    pub fn new(
        vertices: Vec<VertexKind>,
        edges: Vec<BoundedEdge>,
        ends: Vec<End>,
    ) -> Result<Self, StructureError> {
        if vertices.is_empty() {
            return Err(StructureError::Empty);
        }
        if !vertices.iter().any(|v| !matches!(v, VertexKind::Joint)) {
            return Err(StructureError::NoFloor);
        }
        for (index, v) in vertices.iter().enumerate() {
            let bad = match v {
                VertexKind::Ground { degree } => !degree.is_positive(),
                VertexKind::Etage { degree } => *degree == 0,
                VertexKind::Joint => false,
            };
            if bad {
                return Err(StructureError::NonPositiveDegree { index });
            }
        }
        for (index, e) in edges.iter().enumerate() {
            for vertex in [e.tail, e.head] {
                if vertex >= vertices.len() {
                    return Err(StructureError::EdgeOutOfRange { index, vertex });
                }
            }
            if e.tail == e.head {
                return Err(StructureError::Loop {
                    index,
                    vertex: e.tail,
                });
            }
            if e.weight == 0 {
                return Err(StructureError::ZeroEdgeWeight { index });
            }
        }
        for (index, e) in ends.iter().enumerate() {
            if e.vertex >= vertices.len() {
                return Err(StructureError::EndOutOfRange {
                    index,
                    vertex: e.vertex,
                });
            }
            if e.weight == 0 {
                return Err(StructureError::ZeroEndWeight { index });
            }
        }
        Ok(FloorDiagram {
            vertices,
            edges,
            ends,
        })
    }

    pub fn vertices(&self) -> &[VertexKind] {
        &self.vertices
    }

    pub fn edges(&self) -> &[BoundedEdge] {
        &self.edges
    }

    pub fn ends(&self) -> &[End] {
        &self.ends
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn floor_count(&self) -> usize {
        self.vertices.iter().filter(|v| v.is_floor()).count()
    }

    pub fn joint_count(&self) -> usize {
        self.vertices.len() - self.floor_count()
    }

    /// Indices of bounded edges leaving `v`.
    pub fn out_edges(&self, v: usize) -> Vec<usize> {
        (0..self.edges.len())
            .filter(|&i| self.edges[i].tail == v)
            .collect()
    }

    /// Indices of bounded edges entering `v`.
    pub fn in_edges(&self, v: usize) -> Vec<usize> {
        (0..self.edges.len())
            .filter(|&i| self.edges[i].head == v)
            .collect()
    }

    /// Indices of ends attached to `v`.
    pub fn ends_at(&self, v: usize) -> Vec<usize> {
        (0..self.ends.len())
            .filter(|&i| self.ends[i].vertex == v)
            .collect()
    }

    /// Weights of all elevators (bounded, in or out, plus ends) at `v`,
    /// sorted. Their number is the valence of `v`.
    pub fn elevator_weights_at(&self, v: usize) -> Vec<u32> {
        let mut ws: Vec<u32> = self
            .edges
            .iter()
            .filter(|e| e.tail == v || e.head == v)
            .map(|e| e.weight)
            .chain(self.ends.iter().filter(|e| e.vertex == v).map(|e| e.weight))
            .collect();
        ws.sort_unstable();
        ws
    }

    /// Number of connected components of the underlying graph.
    pub fn component_count(&self) -> usize {
        let n = self.vertices.len();
        let mut comp = vec![usize::MAX; n];
        let mut count = 0;
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            comp[start] = count;
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for e in &self.edges {
                    let other = if e.tail == v {
                        e.head
                    } else if e.head == v {
                        e.tail
                    } else {
                        continue;
                    };
                    if comp[other] == usize::MAX {
                        comp[other] = count;
                        stack.push(other);
                    }
                }
            }
            count += 1;
        }
        count
    }

    /// First Betti number of the underlying graph (ends ignored).
    pub fn cycle_rank(&self) -> usize {
        self.edges.len() + self.component_count() - self.vertices.len()
    }

    /// Genus: cycle rank plus number of floors.
    pub fn genus(&self) -> usize {
        self.cycle_rank() + self.floor_count()
    }

    /// Class a*E + b*F: a is the total floor degree, 2b the total end
    /// weight.
    pub fn homology_class(&self) -> HomologyClass {
        let a: HalfInt = self.vertices.iter().map(|v| v.degree()).sum();
        let total_end_weight: i64 = self.ends.iter().map(|e| e.weight as i64).sum();
        HomologyClass {
            a,
            b: HalfInt::from_doubled(total_end_weight),
        }
    }

    /// Multiset of end weights.
    pub fn tangency_profile(&self) -> Partition {
        Partition::new(self.ends.iter().map(|e| e.weight).collect())
            .unwrap_or_else(|_| Partition::empty())
    }

    /// Checks the defining conditions on `surface`; returns every
    /// violation found.
    pub fn validate(&self, surface: SurfaceKind) -> Result<(), Vec<ConditionViolation>> {
        let mut bad = Vec::new();
        let n = self.vertices.len();

        if self.floor_count() == 0 {
            bad.push(ConditionViolation::NoFloor);
        }
        if self.ends.is_empty() {
            bad.push(ConditionViolation::NoEnds);
        }

        // directed acyclicity via Kahn's algorithm
        let mut indegree = vec![0usize; n];
        for e in &self.edges {
            indegree[e.head] += 1;
        }
        let mut queue: VecDeque<usize> = (0..n).filter(|&v| indegree[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = queue.pop_front() {
            seen += 1;
            for &i in &self.out_edges(v) {
                let h = self.edges[i].head;
                indegree[h] -= 1;
                if indegree[h] == 0 {
                    queue.push_back(h);
                }
            }
        }
        if seen != n {
            bad.push(ConditionViolation::DirectedCycle);
        }

        // connectivity of the underlying graph
        let mut visited = vec![false; n];
        let mut stack = vec![0usize];
        visited[0] = true;
        while let Some(v) = stack.pop() {
            for e in &self.edges {
                let other = if e.tail == v {
                    Some(e.head)
                } else if e.head == v {
                    Some(e.tail)
                } else {
                    None
                };
                if let Some(o) = other {
                    if !visited[o] {
                        visited[o] = true;
                        stack.push(o);
                    }
                }
            }
        }
        if visited.iter().any(|&v| !v) {
            bad.push(ConditionViolation::Disconnected);
        }

        for v in 0..n {
            match self.vertices[v] {
                VertexKind::Ground { degree } => {
                    if !self.in_edges(v).is_empty() {
                        bad.push(ConditionViolation::GroundIncoming { vertex: v });
                    }
                    let total: i64 = self
                        .out_edges(v)
                        .iter()
                        .map(|&i| self.edges[i].weight as i64)
                        .chain(self.ends_at(v).iter().map(|&i| self.ends[i].weight as i64))
                        .sum();
                    let target = surface.delta() * degree.doubled();
                    if (total - target) % 2 != 0 {
                        bad.push(ConditionViolation::GroundParity { vertex: v });
                    }
                }
                VertexKind::Etage { .. } => {
                    let incoming: i64 = self
                        .in_edges(v)
                        .iter()
                        .map(|&i| self.edges[i].weight as i64)
                        .sum();
                    let outgoing: i64 = self
                        .out_edges(v)
                        .iter()
                        .map(|&i| self.edges[i].weight as i64)
                        .chain(self.ends_at(v).iter().map(|&i| self.ends[i].weight as i64))
                        .sum();
                    if incoming != outgoing {
                        bad.push(ConditionViolation::EtageUnbalanced { vertex: v });
                    }
                }
                VertexKind::Joint => {
                    if !self.in_edges(v).is_empty() {
                        bad.push(ConditionViolation::JointIncoming { vertex: v });
                    }
                    let mut weights: Vec<u32> = self
                        .out_edges(v)
                        .iter()
                        .map(|&i| self.edges[i].weight)
                        .chain(self.ends_at(v).iter().map(|&i| self.ends[i].weight))
                        .collect();
                    if weights.len() != 2 {
                        bad.push(ConditionViolation::JointValence {
                            vertex: v,
                            found: weights.len(),
                        });
                    } else {
                        weights.sort_unstable();
                        if weights[0] != weights[1] {
                            bad.push(ConditionViolation::JointWeights { vertex: v });
                        }
                    }
                }
            }
        }

        if bad.is_empty() {
            Ok(())
        } else {
            Err(bad)
        }
    }
}

/// A diagram together with the surface it lives on: the on-disk JSON
/// document.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct DiagramRecord {
    pub surface: SurfaceKind,
    #[serde(flatten)]
    pub diagram: FloorDiagram,
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Two parallel weight-1 edges from a degree-1/2 ground floor to a
    /// degree-1 upper floor carrying two weight-1 ends.
    pub fn two_column_diagram() -> FloorDiagram {
        FloorDiagram::new(
            vec![
                VertexKind::Ground {
                    degree: HalfInt::HALF,
                },
                VertexKind::Etage { degree: 1 },
            ],
            vec![
                BoundedEdge {
                    tail: 0,
                    head: 1,
                    weight: 1,
                },
                BoundedEdge {
                    tail: 0,
                    head: 1,
                    weight: 1,
                },
            ],
            vec![End { vertex: 1, weight: 1 }, End { vertex: 1, weight: 1 }],
        )
        .unwrap()
    }

    #[test]
    fn two_column_diagram_is_valid_and_classified() {
        let d = two_column_diagram();
        assert!(d.validate(SurfaceKind::M0).is_ok());
        // on the odd surface the ground total 2 clashes with 2a = 1 mod 2
        assert_eq!(
            d.validate(SurfaceKind::M1),
            Err(vec![ConditionViolation::GroundParity { vertex: 0 }])
        );
        assert_eq!(d.genus(), 3);
        assert_eq!(d.cycle_rank(), 1);
        let cls = d.homology_class();
        assert_eq!(cls.a, HalfInt::from_doubled(3));
        assert_eq!(cls.b, HalfInt::ONE);
        assert_eq!(d.tangency_profile().parts(), &[1, 1]);
        assert_eq!(d.elevator_weights_at(1), vec![1, 1, 1, 1]);
    }

    #[test]
    fn single_ground_with_two_ends() {
        let d = FloorDiagram::new(
            vec![VertexKind::Ground {
                degree: HalfInt::HALF,
            }],
            vec![],
            vec![End { vertex: 0, weight: 1 }, End { vertex: 0, weight: 1 }],
        )
        .unwrap();
        assert!(d.validate(SurfaceKind::M0).is_ok());
        // delta = 1 requires total weight 2 = 2a = 1 mod 2: fails
        assert_eq!(
            d.validate(SurfaceKind::M1),
            Err(vec![ConditionViolation::GroundParity { vertex: 0 }])
        );
        assert_eq!(d.genus(), 1);
    }

    #[test]
    fn structural_errors() {
        assert_eq!(
            FloorDiagram::new(vec![], vec![], vec![]),
            Err(StructureError::Empty)
        );
        let v = vec![VertexKind::Etage { degree: 1 }];
        assert_eq!(
            FloorDiagram::new(
                v.clone(),
                vec![BoundedEdge {
                    tail: 0,
                    head: 1,
                    weight: 1
                }],
                vec![]
            ),
            Err(StructureError::EdgeOutOfRange {
                index: 0,
                vertex: 1
            })
        );
        assert_eq!(
            FloorDiagram::new(
                v.clone(),
                vec![BoundedEdge {
                    tail: 0,
                    head: 0,
                    weight: 1
                }],
                vec![]
            ),
            Err(StructureError::Loop {
                index: 0,
                vertex: 0
            })
        );
        assert_eq!(
            FloorDiagram::new(v.clone(), vec![], vec![End { vertex: 0, weight: 0 }]),
            Err(StructureError::ZeroEndWeight { index: 0 })
        );
        assert_eq!(
            FloorDiagram::new(vec![VertexKind::Etage { degree: 0 }], vec![], vec![]),
            Err(StructureError::NonPositiveDegree { index: 0 })
        );
    }

    #[test]
    fn condition_violations_are_reported() {
        // upper floor imbalance: one weight-2 end fed by nothing
        let d = FloorDiagram::new(
            vec![VertexKind::Etage { degree: 1 }],
            vec![],
            vec![End { vertex: 0, weight: 2 }],
        )
        .unwrap();
        assert_eq!(
            d.validate(SurfaceKind::M0),
            Err(vec![ConditionViolation::EtageUnbalanced { vertex: 0 }])
        );

        // joint with three elevators, unequal weights, incoming edge
        let d = FloorDiagram::new(
            vec![
                VertexKind::Etage { degree: 1 },
                VertexKind::Joint,
                VertexKind::Ground {
                    degree: HalfInt::ONE,
                },
            ],
            vec![
                BoundedEdge {
                    tail: 2,
                    head: 0,
                    weight: 2,
                },
                BoundedEdge {
                    tail: 0,
                    head: 1,
                    weight: 2,
                },
            ],
            vec![End { vertex: 1, weight: 1 }],
        )
        .unwrap();
        let errs = d.validate(SurfaceKind::M0).unwrap_err();
        assert!(errs.contains(&ConditionViolation::JointIncoming { vertex: 1 }));
        assert!(errs.contains(&ConditionViolation::JointValence { vertex: 1, found: 1 }));

        // joint whose two elevators have different weights
        let d = FloorDiagram::new(
            vec![VertexKind::Etage { degree: 1 }, VertexKind::Joint],
            vec![BoundedEdge {
                tail: 1,
                head: 0,
                weight: 1,
            }],
            vec![End { vertex: 0, weight: 1 }, End { vertex: 1, weight: 2 }],
        )
        .unwrap();
        let errs = d.validate(SurfaceKind::M0).unwrap_err();
        assert_eq!(errs, vec![ConditionViolation::JointWeights { vertex: 1 }]);

        // disconnected: two grounds, no edges
        let d = FloorDiagram::new(
            vec![
                VertexKind::Ground {
                    degree: HalfInt::ONE,
                },
                VertexKind::Ground {
                    degree: HalfInt::ONE,
                },
            ],
            vec![],
            vec![End { vertex: 0, weight: 2 }, End { vertex: 1, weight: 2 }],
        )
        .unwrap();
        let errs = d.validate(SurfaceKind::M0).unwrap_err();
        assert!(errs.contains(&ConditionViolation::Disconnected));

        // directed cycle between two upper floors
        let d = FloorDiagram::new(
            vec![VertexKind::Etage { degree: 1 }, VertexKind::Etage { degree: 1 }],
            vec![
                BoundedEdge {
                    tail: 0,
                    head: 1,
                    weight: 1,
                },
                BoundedEdge {
                    tail: 1,
                    head: 0,
                    weight: 1,
                },
            ],
            vec![End { vertex: 0, weight: 1 }],
        )
        .unwrap();
        let errs = d.validate(SurfaceKind::M0).unwrap_err();
        assert!(errs.contains(&ConditionViolation::DirectedCycle));

        // ground with incoming edge
        let d = FloorDiagram::new(
            vec![
                VertexKind::Etage { degree: 1 },
                VertexKind::Ground {
                    degree: HalfInt::ONE,
                },
            ],
            vec![BoundedEdge {
                tail: 0,
                head: 1,
                weight: 2,
            }],
            vec![End { vertex: 1, weight: 2 }],
        )
        .unwrap();
        let errs = d.validate(SurfaceKind::M0).unwrap_err();
        assert!(errs.contains(&ConditionViolation::GroundIncoming { vertex: 1 }));
    }

    #[test]
    fn genus_one_upper_floor_chain() {
        // joint feeding an upper floor, one end at the joint, one at the floor
        let d = FloorDiagram::new(
            vec![VertexKind::Etage { degree: 1 }, VertexKind::Joint],
            vec![BoundedEdge {
                tail: 1,
                head: 0,
                weight: 1,
            }],
            vec![End { vertex: 0, weight: 1 }, End { vertex: 1, weight: 1 }],
        )
        .unwrap();
        assert!(d.validate(SurfaceKind::M0).is_ok());
        assert_eq!(d.genus(), 1);
        assert_eq!(d.homology_class(), HomologyClass::new(HalfInt::ONE, HalfInt::ONE));
    }

    #[test]
    fn json_round_trip() {
        let record = DiagramRecord {
            surface: SurfaceKind::M0,
            diagram: two_column_diagram(),
        };
        let json = serde_json::to_string(&record).unwrap();
        assert!(json.contains("\"surface\":\"m0\""));
        assert!(json.contains("\"kind\":\"ground\""));
        assert!(json.contains("\"degree\":\"1/2\""));
        let back: DiagramRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(back, record);
    }

    #[test]
    fn json_accepts_handwritten_input() {
        let json = r#"{
            "surface": "m1",
            "vertices": [
                {"kind": "ground", "degree": "1/2"},
                {"kind": "etage", "degree": 1},
                {"kind": "joint"}
            ],
            "edges": [{"tail": 0, "head": 1, "weight": 1}],
            "ends": [
                {"vertex": 1, "weight": 1},
                {"vertex": 2, "weight": 1},
                {"vertex": 2, "weight": 1}
            ]
        }"#;
        let rec: DiagramRecord = serde_json::from_str(json).unwrap();
        assert_eq!(rec.diagram.vertex_count(), 3);
        assert_eq!(rec.diagram.joint_count(), 1);
        // joint is floating here: diagram is invalid but parseable
        assert!(rec.diagram.validate(rec.surface).is_err());
    }
}
