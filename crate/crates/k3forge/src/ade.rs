//! Simply-laced Dynkin types and their recognition from intersection data.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AdeType {
    A(u32),
    D(u32),
    E(u32),
}

impl AdeType {
    pub fn rank(&self) -> u32 {
        match *self {
            AdeType::A(n) | AdeType::D(n) | AdeType::E(n) => n,
        }
    }

    /// Milnor number equals the rank for rational double points.
    pub fn milnor(&self) -> u32 {
        self.rank()
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

impl Serialize for AdeType {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FromStr for AdeType {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (head, tail) = s.split_at(s.chars().next().map(|c| c.len_utf8()).unwrap_or(0));
        let n: u32 = tail.parse().map_err(|_| format!("bad ADE label `{s}`"))?;
        match (head, n) {
            ("A", 1..) => Ok(AdeType::A(n)),
            ("D", 4..) => Ok(AdeType::D(n)),
            ("E", 6..=8) => Ok(AdeType::E(n)),
            _ => Err(format!("bad ADE label `{s}`")),
        }
    }
}

/// Formats a configuration like `D4+6A1`, largest types first.
pub fn format_config(types: &[AdeType]) -> String {
    if types.is_empty() {
        return "0".into();
    }
    let mut ts = types.to_vec();
    ts.sort_by(|a, b| b.cmp(a));
    let mut parts: Vec<String> = Vec::new();
    let mut i = 0;
    while i < ts.len() {
        let j = ts[i..].iter().take_while(|t| **t == ts[i]).count();
        parts.push(if j == 1 { ts[i].to_string() } else { format!("{j}{}", ts[i]) });
        i += j;
    }
    parts.join("+")
}

/// Parses `D4+6A1` style configurations.
pub fn parse_config(s: &str) -> Result<Vec<AdeType>, String> {
    let mut out = Vec::new();
    if s.trim() == "0" {
        return Ok(out);
    }
    for part in s.split('+') {
        let part = part.trim();
        let k = part.chars().take_while(|c| c.is_ascii_digit()).count();
        let mult: usize = if k == 0 {
            1
        } else {
            part[..k].parse().map_err(|_| format!("bad multiplicity in `{part}`"))?
        };
        let t: AdeType = part[k..].parse()?;
        out.extend(std::iter::repeat_n(t, mult));
    }
    out.sort_by(|a, b| b.cmp(a));
    Ok(out)
}

/// Dynkin types of the components of a graph given by a symmetric matrix
/// with diagonal -2 and off-diagonal entries in {0, 1}.
pub fn recognize(gram: &[Vec<i64>]) -> Result<Vec<AdeType>, String> {
    let n = gram.len();
    if n == 0 {
        return Err("empty configuration".into());
    }
    for (i, row) in gram.iter().enumerate() {
        if row[i] != -2 {
            return Err(format!("element {i} has self-intersection {}", row[i]));
        }
        for (j, x) in row.iter().enumerate() {
            if i != j && !(0..=1).contains(x) {
                return Err(format!("elements {i} and {j} meet with multiplicity {x}"));
            }
        }
    }
    let adj: Vec<Vec<usize>> = (0..n).map(|i| (0..n).filter(|&j| j != i && gram[i][j] == 1).collect()).collect();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut comp = vec![start];
        seen[start] = true;
        let mut k = 0;
        while k < comp.len() {
            for &j in &adj[comp[k]] {
                if !seen[j] {
                    seen[j] = true;
                    comp.push(j);
                }
            }
            k += 1;
        }
        out.push(component_type(&comp, &adj)?);
    }
    out.sort_by(|a, b| b.cmp(a));
    Ok(out)
}

fn component_type(comp: &[usize], adj: &[Vec<usize>]) -> Result<AdeType, String> {
    let m = comp.len();
    let edges: usize = comp.iter().map(|&i| adj[i].len()).sum::<usize>() / 2;
    if edges != m - 1 {
        return Err("configuration contains a cycle".into());
    }
    let branch: Vec<usize> = comp.iter().copied().filter(|&i| adj[i].len() >= 3).collect();
    if branch.is_empty() {
        return Ok(AdeType::A(m as u32));
    }
    if branch.len() > 1 || adj[branch[0]].len() > 3 {
        return Err("configuration has more than one branch point".into());
    }
    let c = branch[0];
    let mut arms: Vec<usize> = adj[c]
        .iter()
        .map(|&first| {
            let (mut prev, mut cur, mut len) = (c, first, 1);
            while let Some(&nxt) = adj[cur].iter().find(|&&x| x != prev) {
                prev = cur;
                cur = nxt;
                len += 1;
            }
            len
        })
        .collect();
    arms.sort_unstable();
    let n = m as u32;
    match (arms[0], arms[1], arms[2]) {
        (1, 1, _) => Ok(AdeType::D(n)),
        (1, 2, 2) => Ok(AdeType::E(6)),
        (1, 2, 3) => Ok(AdeType::E(7)),
        (1, 2, 4) => Ok(AdeType::E(8)),
        (p, q, r) => Err(format!("tree with arms ({p}, {q}, {r}) is not a Dynkin diagram")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Lattice;

    #[test]
    fn recognizes_root_lattices() {
        assert_eq!(recognize(Lattice::a(5).unwrap().gram()).unwrap(), vec![AdeType::A(5)]);
        assert_eq!(recognize(Lattice::d(6).unwrap().gram()).unwrap(), vec![AdeType::D(6)]);
        assert_eq!(recognize(Lattice::d(4).unwrap().gram()).unwrap(), vec![AdeType::D(4)]);
        for k in 6..=8 {
            assert_eq!(recognize(Lattice::e(k).unwrap().gram()).unwrap(), vec![AdeType::E(k as u32)]);
        }
        let sum = Lattice::a(1).unwrap().sum(&Lattice::d(4).unwrap());
        assert_eq!(recognize(sum.gram()).unwrap(), vec![AdeType::D(4), AdeType::A(1)]);
    }

    #[test]
    fn rejects_non_dynkin() {
        let cycle = vec![vec![-2, 1, 1], vec![1, -2, 1], vec![1, 1, -2]];
        assert!(recognize(&cycle).is_err());
        assert!(recognize(&[vec![-2, 2], vec![2, -2]]).is_err());
        assert!(recognize(&[vec![0]]).is_err());
    }

    #[test]
    fn config_round_trip() {
        let c = parse_config("D4+6A1").unwrap();
        assert_eq!(c.len(), 7);
        assert_eq!(format_config(&c), "D4+6A1");
        assert_eq!(format_config(&parse_config("E7+5A1").unwrap()), "E7+5A1");
        assert_eq!("E6".parse::<AdeType>().unwrap(), AdeType::E(6));
        assert!("E9".parse::<AdeType>().is_err());
        assert!("D3".parse::<AdeType>().is_err());
    }
}
