//! Simple pseudoline arrangements as wiring diagrams, and the cells they cut
//! out of a parabolic region containing every crossing.
//!
//! Lines are labeled by their initial position, counted from the bottom. A
//! swap at position `i` exchanges the lines at positions `i` and `i + 1`.
//! Gap `j` is the strip between positions `j - 1` and `j`; gap `0` lies below
//! every line and gap `k` above every line.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WiringDiagram {
    k: usize,
    swaps: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WiringViolation {
    #[error("{got} swaps given, a simple arrangement of these lines needs {expected}")]
    WrongLength { expected: usize, got: usize },
    #[error("swap {step} at position {position} has no line above it")]
    PositionOutOfRange { step: usize, position: usize },
    #[error("swap {step} crosses lines {a} and {b} a second time")]
    PairSwappedTwice { step: usize, a: usize, b: usize },
    #[error("lines {a} and {b} never cross")]
    PairNeverSwapped { a: usize, b: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WiringParseError {
    #[error("expected `k; i1 i2 ...`")]
    MissingSeparator,
    #[error("invalid number `{0}`")]
    BadNumber(String),
}

impl WiringDiagram {
    /// Unchecked; see [`WiringDiagram::validate`].
    pub fn new(k: usize, swaps: Vec<usize>) -> Self {
        WiringDiagram { k, swaps }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn swaps(&self) -> &[usize] {
        &self.swaps
    }

    /// Every violation found, in step order, then missing pairs.
    pub fn validate(&self) -> Result<(), Vec<WiringViolation>> {
        let k = self.k;
        let expected = k * k.saturating_sub(1) / 2;
        let mut violations = Vec::new();
        if self.swaps.len() != expected {
            violations.push(WiringViolation::WrongLength {
                expected,
                got: self.swaps.len(),
            });
        }
        let mut order: Vec<usize> = (0..k).collect();
        let mut crossed = vec![vec![false; k]; k];
        for (step, &position) in self.swaps.iter().enumerate() {
            if position + 1 >= k {
                violations.push(WiringViolation::PositionOutOfRange { step, position });
                continue;
            }
            let (a, b) = (order[position].min(order[position + 1]), order[position].max(order[position + 1]));
            if crossed[a][b] {
                violations.push(WiringViolation::PairSwappedTwice { step, a, b });
            }
            crossed[a][b] = true;
            order.swap(position, position + 1);
        }
        for (a, row) in crossed.iter().enumerate() {
            for (b, _) in row.iter().enumerate().skip(a + 1).filter(|(_, &c)| !c) {
                violations.push(WiringViolation::PairNeverSwapped { a, b });
            }
        }
        if violations.is_empty() {
            Ok(())
        } else {
            Err(violations)
        }
    }

    /// Line order (bottom to top) after all swaps.
    pub fn final_order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.k).collect();
        for &i in &self.swaps {
            order.swap(i, i + 1);
        }
        order
    }

    /// Every valid diagram on `k` lines, in lexicographic swap order.
    /// Grows quickly: 768 diagrams for `k = 5`, 292864 for `k = 6`.
    pub fn enumerate_all(k: usize) -> Vec<WiringDiagram> {
        fn extend(order: &mut Vec<usize>, word: &mut Vec<usize>, total: usize, out: &mut Vec<WiringDiagram>) {
            if word.len() == total {
                out.push(WiringDiagram::new(order.len(), word.clone()));
                return;
            }
            for i in 0..order.len().saturating_sub(1) {
                // lines still in initial relative order have not crossed yet
                if order[i] < order[i + 1] {
                    order.swap(i, i + 1);
                    word.push(i);
                    extend(order, word, total, out);
                    word.pop();
                    order.swap(i, i + 1);
                }
            }
        }
        let mut out = Vec::new();
        let total = k * k.saturating_sub(1) / 2;
        extend(&mut (0..k).collect(), &mut Vec::new(), total, &mut out);
        out
    }

    /// A valid diagram built by repeatedly swapping a random uncrossed
    /// adjacent pair.
    pub fn random<R: Rng + ?Sized>(k: usize, rng: &mut R) -> WiringDiagram {
        let mut order: Vec<usize> = (0..k).collect();
        let mut swaps = Vec::with_capacity(k * k.saturating_sub(1) / 2);
        loop {
            let candidates: Vec<usize> = (0..k.saturating_sub(1)).filter(|&i| order[i] < order[i + 1]).collect();
            if candidates.is_empty() {
                break;
            }
            let i = candidates[rng.gen_range(0..candidates.len())];
            order.swap(i, i + 1);
            swaps.push(i);
        }
        WiringDiagram { k, swaps }
    }
}

impl fmt::Display for WiringDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};", self.k)?;
        for s in &self.swaps {
            write!(f, " {s}")?;
        }
        Ok(())
    }
}

impl FromStr for WiringDiagram {
    type Err = WiringParseError;

    /// `k; i1 i2 ... iC(k,2)`, each `i` the lower position of a swap.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (head, tail) = s.trim().split_once(';').ok_or(WiringParseError::MissingSeparator)?;
        let num = |t: &str| t.parse::<usize>().map_err(|_| WiringParseError::BadNumber(t.to_string()));
        let k = num(head.trim())?;
        let swaps = tail.split_whitespace().map(num).collect::<Result<_, _>>()?;
        Ok(WiringDiagram { k, swaps })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

/// Which part of the region boundary a boundary cell touches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ArcSide {
    Left,
    Bottom,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Cell {
    pub id: usize,
    pub gap: usize,
    pub bounded: bool,
    pub boundary_arc_count: u8,
}

/// One pseudoline segment with the cells directly below and above it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SegmentAdjacency {
    pub below: usize,
    pub above: usize,
    pub line: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundaryEntity {
    Endpoint { line: usize, side: Side },
    Arc { cell: usize, side: ArcSide },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellComplex {
    pub k: usize,
    /// Indexed by cell id: gaps `0..=k` first, then one cell per swap.
    pub cells: Vec<Cell>,
    pub segment_adjacencies: Vec<SegmentAdjacency>,
    /// Boundary walk: down the left branch from the top, across the bottom,
    /// up the right branch.
    pub boundary_order: Vec<BoundaryEntity>,
}

impl CellComplex {
    pub fn bounded_count(&self) -> usize {
        self.cells.iter().filter(|c| c.bounded).count()
    }

    pub fn top_cell(&self) -> usize {
        self.k
    }
}

/// Sweeps the diagram left to right and records the cells of the clipped
/// arrangement.
pub fn cells(w: &WiringDiagram) -> Result<CellComplex, Vec<WiringViolation>> {
    w.validate()?;
    let k = w.k();
    let mut cells: Vec<Cell> = (0..=k)
        .map(|gap| Cell {
            id: gap,
            gap,
            bounded: false,
            boundary_arc_count: 0,
        })
        .collect();
    let initial_cells: Vec<usize> = (0..=k).collect();
    let mut current = initial_cells.clone();
    let mut order: Vec<usize> = (0..k).collect();
    let mut adjacencies = Vec::with_capacity(k * k);

    for &i in w.swaps() {
        // the lines at i and i+1 end a segment each
        adjacencies.push(SegmentAdjacency {
            below: current[i],
            above: current[i + 1],
            line: order[i],
        });
        adjacencies.push(SegmentAdjacency {
            below: current[i + 1],
            above: current[i + 2],
            line: order[i + 1],
        });
        let id = cells.len();
        cells.push(Cell {
            id,
            gap: i + 1,
            bounded: false,
            boundary_arc_count: 0,
        });
        current[i + 1] = id;
        order.swap(i, i + 1);
    }
    for (pos, &line) in order.iter().enumerate() {
        adjacencies.push(SegmentAdjacency {
            below: current[pos],
            above: current[pos + 1],
            line,
        });
    }
    let final_cells = current;

    for cell in cells.iter_mut() {
        let touches_left = initial_cells[cell.gap] == cell.id;
        let touches_right = final_cells[cell.gap] == cell.id;
        cell.boundary_arc_count = if cell.gap == k {
            2
        } else if cell.gap == 0 || touches_left || touches_right {
            1
        } else {
            0
        };
        cell.bounded = cell.boundary_arc_count == 0;
    }

    let mut boundary_order = Vec::with_capacity(4 * k + 1);
    boundary_order.push(BoundaryEntity::Arc {
        cell: initial_cells[k],
        side: ArcSide::Left,
    });
    for pos in (0..k).rev() {
        boundary_order.push(BoundaryEntity::Endpoint {
            line: pos,
            side: Side::Left,
        });
        let side = if pos == 0 { ArcSide::Bottom } else { ArcSide::Left };
        boundary_order.push(BoundaryEntity::Arc {
            cell: initial_cells[pos],
            side,
        });
    }
    if k == 0 {
        // a lone region: its single arc already recorded as the top cell
        boundary_order.clear();
        boundary_order.push(BoundaryEntity::Arc {
            cell: 0,
            side: ArcSide::Bottom,
        });
    }
    for (pos, &line) in order.iter().enumerate() {
        boundary_order.push(BoundaryEntity::Endpoint {
            line,
            side: Side::Right,
        });
        boundary_order.push(BoundaryEntity::Arc {
            cell: final_cells[pos + 1],
            side: ArcSide::Right,
        });
    }

    Ok(CellComplex {
        k,
        cells,
        segment_adjacencies: adjacencies,
        boundary_order,
    })
}
