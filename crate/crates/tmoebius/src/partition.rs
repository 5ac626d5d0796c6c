use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// Integer partition: weakly decreasing positive parts.
///
/// Tangency profiles of curve ends are partitions of twice the fiber
/// coefficient of the curve class.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// Builds from arbitrary positive parts, sorting them decreasingly.
    pub fn new(mut parts: Vec<u32>) -> Result<Self, PartitionError> {
        if parts.iter().any(|&p| p == 0) {
            return Err(PartitionError::ZeroPart);
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition { parts })
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Sum of all parts.
    pub fn norm(&self) -> u64 {
        self.parts.iter().map(|&p| p as u64).sum()
    }

    /// Number of parts equal to `value`.
    pub fn multiplicity(&self, value: u32) -> usize {
        self.parts.iter().filter(|&&p| p == value).count()
    }

    /// Product of factorials of part multiplicities: the order of the
    /// symmetry group permuting equal parts.
    pub fn symmetry_order(&self) -> u64 {
        let mut order = 1u64;
        let mut run = 1u64;
        for w in self.parts.windows(2) {
            if w[0] == w[1] {
                run += 1;
                order *= run;
            } else {
                run = 1;
            }
        }
        order
    }

    /// Merges two partitions into one.
    pub fn merge(&self, other: &Partition) -> Partition {
        let mut parts = self.parts.clone();
        parts.extend_from_slice(&other.parts);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    /// All partitions of `n` (decreasing part lists), in lexicographic order.
    pub fn all_of(n: u64) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut current = Vec::new();
        fn rec(remaining: u64, max: u64, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if remaining == 0 {
                out.push(Partition {
                    parts: current.clone(),
                });
                return;
            }
            let mut p = remaining.min(max);
            while p >= 1 {
                current.push(p as u32);
                rec(remaining - p, p, current, out);
                current.pop();
                p -= 1;
            }
        }
        rec(n, n, &mut current, &mut out);
        out
    }

    /// All ways to split this partition into an ordered pair of
    /// sub-multisets (fixed, free); each pair appears once.
    pub fn splits(&self) -> Vec<(Partition, Partition)> {
        let mut groups: Vec<(u32, usize)> = Vec::new();
        for &p in &self.parts {
            match groups.last_mut() {
                Some((v, c)) if *v == p => *c += 1,
                _ => groups.push((p, 1)),
            }
        }
        let mut out = Vec::new();
        let mut take = vec![0usize; groups.len()];
        loop {
            let mut fixed = Vec::new();
            let mut free = Vec::new();
            for (i, &(v, c)) in groups.iter().enumerate() {
                for _ in 0..take[i] {
                    fixed.push(v);
                }
                for _ in take[i]..c {
                    free.push(v);
                }
            }
            out.push((
                Partition::new(fixed).unwrap_or_else(|_| Partition::empty()),
                Partition::new(free).unwrap_or_else(|_| Partition::empty()),
            ));
            let mut i = 0;
            loop {
                if i == groups.len() {
                    return out;
                }
                if take[i] < groups[i].1 {
                    take[i] += 1;
                    break;
                }
                take[i] = 0;
                i += 1;
            }
        }
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum PartitionError {
    #[error("partition parts must be positive")]
    ZeroPart,
    #[error("invalid partition `{0}`: expected comma-separated positive integers")]
    Parse(String),
}

impl FromStr for Partition {
    type Err = PartitionError;

    /// Parses a comma-separated part list such as `"2,1,1"`; an empty
    /// string (or `"-"`) is the empty partition.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() || s == "-" {
            return Ok(Partition::empty());
        }
        let parts: Result<Vec<u32>, _> = s.split(',').map(|t| t.trim().parse::<u32>()).collect();
        match parts {
            Ok(parts) => {
                Partition::new(parts).map_err(|_| PartitionError::Parse(s.to_string()))
            }
            Err(_) => Err(PartitionError::Parse(s.to_string())),
        }
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = PartitionError;
    fn try_from(parts: Vec<u32>) -> Result<Self, PartitionError> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Vec<u32> {
        p.parts
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "()");
        }
        let strs: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", strs.join(","))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
