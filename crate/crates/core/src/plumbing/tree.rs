use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sign::Sign;

/// A labeled plumbing tree: one Hopf band per vertex, twisted according to
/// its sign, plumbed along the edges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "TreeJson", into = "TreeJson")]
pub struct PlumbingTree {
    signs: Vec<Sign>,
    edges: Vec<(usize, usize)>,
}

#[derive(Serialize, Deserialize)]
struct TreeJson {
    signs: Vec<i64>,
    edges: Vec<[usize; 2]>,
}

impl TryFrom<TreeJson> for PlumbingTree {
    type Error = Error;

    fn try_from(j: TreeJson) -> Result<Self> {
        let signs = j
            .signs
            .into_iter()
            .map(Sign::try_from)
            .collect::<Result<Vec<_>>>()?;
        PlumbingTree::new(signs, j.edges.into_iter().map(|[a, b]| (a, b)).collect())
    }
}

impl From<PlumbingTree> for TreeJson {
    fn from(t: PlumbingTree) -> Self {
        TreeJson {
            signs: t.signs.iter().map(|s| s.to_i64()).collect(),
            edges: t.edges.iter().map(|&(a, b)| [a, b]).collect(),
        }
    }
}

impl PlumbingTree {
    /// Validates that `edges` form a spanning tree on the vertices.
    pub fn new(signs: Vec<Sign>, edges: Vec<(usize, usize)>) -> Result<Self> {
        let n = signs.len();
        if n == 0 {
            return Err(Error::InvalidTree("no vertices".into()));
        }
        if edges.len() + 1 != n {
            return Err(Error::InvalidTree(format!(
                "{} edges for {} vertices",
                edges.len(),
                n
            )));
        }
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for &(a, b) in &edges {
            if a >= n || b >= n {
                return Err(Error::InvalidTree(format!("edge ({a},{b}) out of range")));
            }
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra == rb {
                return Err(Error::InvalidTree(format!("edge ({a},{b}) closes a cycle")));
            }
            parent[ra] = rb;
        }
        Ok(PlumbingTree { signs, edges })
    }

    /// A path `0 - 1 - ... - (k-1)` with the given labels.
    pub fn path(signs: Vec<Sign>) -> Result<Self> {
        let edges = (1..signs.len()).map(|i| (i - 1, i)).collect();
        Self::new(signs, edges)
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.signs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.signs.is_empty()
    }

    /// Parses the inline grammar `"- + / 0 1"`: sign tokens, a `/`, then
    /// edge endpoints in pairs. Later `/` or `,` may separate the pairs.
    pub fn parse_inline(s: &str) -> Result<Self> {
        let (signs, edges) = match s.split_once('/') {
            Some((a, b)) => (a, b),
            None => (s, ""),
        };
        let signs = signs
            .split_whitespace()
            .map(str::parse)
            .collect::<Result<Vec<Sign>>>()?;
        let ends = edges
            .split(|c: char| c.is_whitespace() || c == '/' || c == ',')
            .filter(|tok| !tok.is_empty())
            .map(|tok| {
                tok.parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad vertex index {tok:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if ends.len() % 2 != 0 {
            return Err(Error::Parse("odd number of edge endpoints".into()));
        }
        let edges = ends.chunks(2).map(|c| (c[0], c[1])).collect();
        Self::new(signs, edges)
    }
}

/// Text format: first line holds the signs, every further non-empty line one
/// `i j` edge.
impl FromStr for PlumbingTree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = s.lines().map(str::trim).filter(|l| !l.is_empty());
        let first = lines
            .next()
            .ok_or_else(|| Error::Parse("empty tree description".into()))?;
        let mut inline = first.to_owned();
        inline.push_str(" /");
        for line in lines {
            if line.split_whitespace().count() != 2 {
                return Err(Error::Parse(format!("edge line {line:?} needs two indices")));
            }
            inline.push(' ');
            inline.push_str(line);
        }
        Self::parse_inline(&inline)
    }
}

impl fmt::Display for PlumbingTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let signs: Vec<String> = self.signs.iter().map(ToString::to_string).collect();
        writeln!(f, "{}", signs.join(" "))?;
        for (a, b) in &self.edges {
            writeln!(f, "{a} {b}")?;
        }
        Ok(())
    }
}
