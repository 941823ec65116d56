//! Galois connections between finite lattices and preimages of map classes.

use std::sync::Arc;

use thiserror::Error;

use crate::class::MapClass;
use crate::lattice::{FiniteLattice, LatticeError, LatticeMap};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AdjunctionError {
    #[error("{side} adjoint table has {found} entries, expected {expected}")]
    TableSize { side: Side, expected: usize, found: usize },
    #[error("{side} adjoint is not monotone: {a} <= {b} but images are not ordered")]
    NotMonotone { side: Side, a: String, b: String },
    #[error("adjunction law fails at x = {x}, y = {y}: left(x) <= y is {left_le} but x <= right(y) is {right_le}")]
    LawFails {
        x: String,
        y: String,
        left_le: bool,
        right_le: bool,
    },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// Which adjoint of a connection to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

/// A monotone Galois connection `left ⊣ right` with `left: lower -> upper`
/// and `right: upper -> lower`.
#[derive(Debug, Clone)]
pub struct GaloisConnection {
    lower: Arc<FiniteLattice>,
    upper: Arc<FiniteLattice>,
    left: Vec<usize>,
    right: Vec<usize>,
}

impl GaloisConnection {
    pub fn new(
        lower: Arc<FiniteLattice>,
        upper: Arc<FiniteLattice>,
        left: Vec<usize>,
        right: Vec<usize>,
    ) -> Result<Self, AdjunctionError> {
        check_table(Side::Left, &lower, &upper, &left)?;
        check_table(Side::Right, &upper, &lower, &right)?;
        for x in lower.objects() {
            for y in upper.objects() {
                let left_le = upper.leq(left[x], y);
                let right_le = lower.leq(x, right[y]);
                if left_le != right_le {
                    return Err(AdjunctionError::LawFails {
                        x: lower.label(x).to_owned(),
                        y: upper.label(y).to_owned(),
                        left_le,
                        right_le,
                    });
                }
            }
        }
        Ok(Self {
            lower,
            upper,
            left,
            right,
        })
    }

    pub fn identity(lattice: Arc<FiniteLattice>) -> Self {
        let table: Vec<usize> = lattice.objects().collect();
        Self {
            lower: lattice.clone(),
            upper: lattice,
            left: table.clone(),
            right: table,
        }
    }

    pub fn lower(&self) -> &Arc<FiniteLattice> {
        &self.lower
    }

    pub fn upper(&self) -> &Arc<FiniteLattice> {
        &self.upper
    }

    pub fn left(&self) -> &[usize] {
        &self.left
    }

    pub fn right(&self) -> &[usize] {
        &self.right
    }

    /// Domain lattice of the chosen adjoint.
    pub fn domain(&self, side: Side) -> &Arc<FiniteLattice> {
        match side {
            Side::Left => &self.lower,
            Side::Right => &self.upper,
        }
    }

    /// Codomain lattice of the chosen adjoint.
    pub fn codomain(&self, side: Side) -> &Arc<FiniteLattice> {
        match side {
            Side::Left => &self.upper,
            Side::Right => &self.lower,
        }
    }

    pub fn table(&self, side: Side) -> &[usize] {
        match side {
            Side::Left => &self.left,
            Side::Right => &self.right,
        }
    }

    pub fn apply(&self, side: Side, f: LatticeMap) -> LatticeMap {
        let t = self.table(side);
        LatticeMap::new(t[f.source], t[f.target])
    }

    /// Maps of the adjoint's domain whose image lies in `k`.
    pub fn preimage_class(&self, side: Side, k: &MapClass) -> MapClass {
        let (dom, cod) = (self.domain(side), self.codomain(side));
        dom.class_where(|f| k.contains(cod.map_index(self.apply(side, f))))
    }

    /// Maps of the adjoint's domain sent to identities.
    pub fn inverted(&self, side: Side) -> MapClass {
        let t = self.table(side);
        self.domain(side).class_where(|f| t[f.source] == t[f.target])
    }

    /// Parses the adjunction file format: two lattice blocks, each opened by
    /// a `lattice NAME` line, followed by `left:` and `right:` tables of
    /// `x->y` entries (comma or whitespace separated, repeatable).
    ///
    /// ```text
    /// lattice c2
    /// objects: 0 1
    /// le: 0<=1
    /// lattice one
    /// objects: *
    /// left: 0->*, 1->*
    /// right: *->1
    /// ```
    pub fn parse(text: &str) -> Result<Self, AdjunctionError> {
        let mut blocks: Vec<(String, String)> = Vec::new();
        let mut left_entries = Vec::new();
        let mut right_entries = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = lineno + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            if let Some(name) = content.strip_prefix("lattice ") {
                if !left_entries.is_empty() || !right_entries.is_empty() {
                    return Err(AdjunctionError::Parse {
                        line,
                        message: "lattice blocks must precede the adjoint tables".into(),
                    });
                }
                blocks.push((name.trim().to_owned(), String::new()));
                continue;
            }
            let table = if let Some(rest) = content.strip_prefix("left:") {
                Some((&mut left_entries, rest))
            } else {
                content.strip_prefix("right:").map(|rest| (&mut right_entries, rest))
            };
            match (table, blocks.last_mut()) {
                (Some((entries, rest)), _) => {
                    for item in rest
                        .split(|c: char| c == ',' || c.is_whitespace())
                        .filter(|s| !s.is_empty())
                    {
                        let (a, b) = item.split_once("->").ok_or_else(|| AdjunctionError::Parse {
                            line,
                            message: format!("expected `x->y`, found {item:?}"),
                        })?;
                        entries.push((line, a.to_owned(), b.to_owned()));
                    }
                }
                (None, Some((_, body))) => {
                    body.push_str(raw);
                    body.push('\n');
                }
                (None, None) => {
                    return Err(AdjunctionError::Parse {
                        line,
                        message: "expected `lattice NAME`".into(),
                    })
                }
            }
        }
        if blocks.len() != 2 {
            return Err(AdjunctionError::Parse {
                line: 0,
                message: format!("expected two lattice blocks, found {}", blocks.len()),
            });
        }
        let lower = Arc::new(FiniteLattice::parse(blocks[0].0.clone(), &blocks[0].1)?);
        let upper = Arc::new(FiniteLattice::parse(blocks[1].0.clone(), &blocks[1].1)?);
        let left = build_table(Side::Left, &lower, &upper, &left_entries)?;
        let right = build_table(Side::Right, &upper, &lower, &right_entries)?;
        Self::new(lower, upper, left, right)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("lattice {}\n{}", self.lower.name(), self.lower.to_text());
        out.push_str(&format!("lattice {}\n{}", self.upper.name(), self.upper.to_text()));
        let fmt = |dom: &FiniteLattice, cod: &FiniteLattice, t: &[usize]| {
            t.iter()
                .enumerate()
                .map(|(x, &y)| format!("{}->{}", dom.label(x), cod.label(y)))
                .collect::<Vec<_>>()
                .join(", ")
        };
        out.push_str(&format!("left: {}\n", fmt(&self.lower, &self.upper, &self.left)));
        out.push_str(&format!("right: {}\n", fmt(&self.upper, &self.lower, &self.right)));
        out
    }
}

fn check_table(side: Side, dom: &FiniteLattice, cod: &FiniteLattice, table: &[usize]) -> Result<(), AdjunctionError> {
    if table.len() != dom.len() || table.iter().any(|&y| y >= cod.len()) {
        return Err(AdjunctionError::TableSize {
            side,
            expected: dom.len(),
            found: table.len(),
        });
    }
    for f in dom.maps() {
        if !cod.leq(table[f.source], table[f.target]) {
            return Err(AdjunctionError::NotMonotone {
                side,
                a: dom.label(f.source).to_owned(),
                b: dom.label(f.target).to_owned(),
            });
        }
    }
    Ok(())
}

fn build_table(
    side: Side,
    dom: &FiniteLattice,
    cod: &FiniteLattice,
    entries: &[(usize, String, String)],
) -> Result<Vec<usize>, AdjunctionError> {
    let mut table = vec![None; dom.len()];
    for (line, a, b) in entries {
        let x = dom.object(a).map_err(|e| AdjunctionError::Parse {
            line: *line,
            message: e.to_string(),
        })?;
        let y = cod.object(b).map_err(|e| AdjunctionError::Parse {
            line: *line,
            message: e.to_string(),
        })?;
        if table[x].replace(y).is_some() {
            return Err(AdjunctionError::Parse {
                line: *line,
                message: format!("{side} adjoint assigns {a} twice"),
            });
        }
    }
    table
        .into_iter()
        .enumerate()
        .map(|(x, y)| {
            y.ok_or_else(|| AdjunctionError::Parse {
                line: 0,
                message: format!("{side} adjoint has no entry for {}", dom.label(x)),
            })
        })
        .collect()
}
