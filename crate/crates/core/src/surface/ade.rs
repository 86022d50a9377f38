//! ADE labels, local fundamental group orders and structural Dynkin
//! classification of (-2)-curve graphs.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AdeType {
    A(u32),
    D(u32),
    E(u32),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AdeError {
    #[error("unknown ADE label {0:?}")]
    UnknownLabel(String),
    #[error("graph is not a Dynkin diagram of type A, D or E: {0}")]
    NotDynkin(&'static str),
}

impl AdeType {
    pub fn is_valid(self) -> bool {
        match self {
            AdeType::A(n) => n >= 1,
            AdeType::D(n) => n >= 4,
            AdeType::E(n) => (6..=8).contains(&n),
        }
    }

    /// Number of exceptional curves in the minimal resolution.
    pub fn rank(self) -> u32 {
        match self {
            AdeType::A(n) | AdeType::D(n) | AdeType::E(n) => n,
        }
    }

    /// Order of the local fundamental group `G` with `(X, x) = C^2 / G`.
    pub fn group_order(self) -> u64 {
        match self {
            AdeType::A(n) => u64::from(n) + 1,
            AdeType::D(n) => 4 * (u64::from(n) - 2),
            AdeType::E(6) => 24,
            AdeType::E(7) => 48,
            AdeType::E(8) => 120,
            AdeType::E(n) => panic!("E{n} is not an ADE type"),
        }
    }

    /// Edges of the Dynkin diagram on vertices `0..rank`, in a fixed labelling:
    /// A_n is the path; D_n is the path `0..n-2` with vertex `n-1` attached to
    /// `n-3`; E_n is the path `0..n-1` with vertex `n-1` attached to vertex 2.
    pub fn dynkin_edges(self) -> Vec<(usize, usize)> {
        let n = self.rank() as usize;
        match self {
            AdeType::A(_) => (1..n).map(|i| (i - 1, i)).collect(),
            AdeType::D(_) => {
                let mut edges: Vec<_> = (1..n - 1).map(|i| (i - 1, i)).collect();
                edges.push((n - 3, n - 1));
                edges
            }
            AdeType::E(_) => {
                let mut edges: Vec<_> = (1..n - 1).map(|i| (i - 1, i)).collect();
                edges.push((2, n - 1));
                edges
            }
        }
    }
}

impl fmt::Display for AdeType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AdeType::A(n) => write!(f, "A{n}"),
            AdeType::D(n) => write!(f, "D{n}"),
            AdeType::E(n) => write!(f, "E{n}"),
        }
    }
}

impl FromStr for AdeType {
    type Err = AdeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let unknown = || AdeError::UnknownLabel(s.to_string());
        let s = s.trim();
        let mut chars = s.chars();
        let family = chars.next().ok_or_else(unknown)?;
        let rest = chars.as_str().trim_start_matches('_');
        let n: u32 = rest.parse().map_err(|_| unknown())?;
        let label = match family {
            'A' => AdeType::A(n),
            'D' => AdeType::D(n),
            'E' => AdeType::E(n),
            _ => return Err(unknown()),
        };
        if label.is_valid() {
            Ok(label)
        } else {
            Err(unknown())
        }
    }
}

/// Parses a singularity type such as `"2A1+A3"` into a sorted label list.
/// The empty string and `"smooth"` denote no singular points.
pub fn parse_singularity_type(text: &str) -> Result<Vec<AdeType>, AdeError> {
    let text = text.trim();
    if text.is_empty() || text == "smooth" {
        return Ok(Vec::new());
    }
    let mut labels = Vec::new();
    for term in text.split('+') {
        let term = term.trim();
        let digits = term.chars().take_while(char::is_ascii_digit).count();
        let count: usize = if digits == 0 {
            1
        } else {
            term[..digits]
                .parse()
                .map_err(|_| AdeError::UnknownLabel(term.to_string()))?
        };
        let label: AdeType = term[digits..].parse()?;
        labels.extend(std::iter::repeat_n(label, count));
    }
    labels.sort();
    Ok(labels)
}

/// Canonical text for a label multiset, e.g. `[A1, A1, A3] -> "2A1+A3"`.
pub fn format_singularity_type(labels: &[AdeType]) -> String {
    let mut sorted = labels.to_vec();
    sorted.sort();
    let mut parts = Vec::new();
    let mut i = 0;
    while i < sorted.len() {
        let j = (i..sorted.len())
            .find(|&j| sorted[j] != sorted[i])
            .unwrap_or(sorted.len());
        if j - i == 1 {
            parts.push(sorted[i].to_string());
        } else {
            parts.push(format!("{}{}", j - i, sorted[i]));
        }
        i = j;
    }
    if parts.is_empty() {
        "smooth".to_string()
    } else {
        parts.join("+")
    }
}

/// Classifies a graph on `n` vertices by shape. `edges` lists unordered pairs
/// with their intersection multiplicity; any multiplicity other than 1 is
/// rejected.
pub fn classify_dynkin(n: usize, edges: &[(usize, usize, i64)]) -> Result<AdeType, AdeError> {
    if n == 0 {
        return Err(AdeError::NotDynkin("empty graph"));
    }
    let mut adjacency = vec![Vec::new(); n];
    for &(u, v, mult) in edges {
        if mult != 1 {
            return Err(AdeError::NotDynkin("curves meet with multiplicity > 1"));
        }
        if u == v || u >= n || v >= n {
            return Err(AdeError::NotDynkin("bad edge"));
        }
        adjacency[u].push(v);
        adjacency[v].push(u);
    }
    if edges.len() != n - 1 {
        return Err(AdeError::NotDynkin("not a tree"));
    }
    // connected + n-1 edges => tree
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(u) = stack.pop() {
        for &v in &adjacency[u] {
            if !seen[v] {
                seen[v] = true;
                stack.push(v);
            }
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(AdeError::NotDynkin("not connected"));
    }

    let branch: Vec<usize> = (0..n).filter(|&v| adjacency[v].len() >= 3).collect();
    let n32 = n as u32;
    match branch.as_slice() {
        [] => Ok(AdeType::A(n32)),
        [b] if adjacency[*b].len() == 3 => {
            let mut arms: Vec<usize> = adjacency[*b]
                .iter()
                .map(|&start| arm_length(&adjacency, *b, start))
                .collect();
            arms.sort_unstable();
            match arms.as_slice() {
                [1, 1, _] => Ok(AdeType::D(n32)),
                [1, 2, 2] => Ok(AdeType::E(6)),
                [1, 2, 3] => Ok(AdeType::E(7)),
                [1, 2, 4] => Ok(AdeType::E(8)),
                _ => Err(AdeError::NotDynkin("branch arms do not match D or E")),
            }
        }
        _ => Err(AdeError::NotDynkin("more than one branch vertex")),
    }
}

fn arm_length(adjacency: &[Vec<usize>], branch: usize, start: usize) -> usize {
    let (mut prev, mut cur, mut len) = (branch, start, 1);
    loop {
        let next: Vec<usize> = adjacency[cur]
            .iter()
            .copied()
            .filter(|&v| v != prev)
            .collect();
        match next.as_slice() {
            [v] => {
                prev = cur;
                cur = *v;
                len += 1;
            }
            _ => return len,
        }
    }
}
