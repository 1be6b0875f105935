//! Caravans: diagrams made of `g` separate crossing pairs, side by side.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashSet};

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::diagram::{is_admissible, new_diagram, Arc, ArcDiagram, End};
use crate::error::{Error, Result};
use crate::layout::{combinatorially_legal, vasiliev_with_shifts};
use crate::rational::{serde_rational, Int, Rational};
use crate::moves::Move;

/// Arc lengths of a caravan in left-endpoint order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodVector {
    pub genus: usize,
    #[serde(with = "serde_rational::vec")]
    pub lengths: Vec<Rational>,
}

impl PeriodVector {
    pub fn new(lengths: Vec<Rational>) -> Result<PeriodVector> {
        if lengths.is_empty() || !lengths.len().is_multiple_of(2) {
            return Err(Error::SizeMismatch(format!(
                "period vector needs an even, positive number of entries, got {}",
                lengths.len()
            )));
        }
        if lengths.iter().any(|x| !x.is_positive()) {
            return Err(Error::NonPositiveLength);
        }
        Ok(PeriodVector {
            genus: lengths.len() / 2,
            lengths,
        })
    }
}

pub fn is_caravan(d: &ArcDiagram) -> bool {
    d.endpoints().chunks(4).all(|g| {
        g[0].id == g[2].id && g[1].id == g[3].id && g[0].id != g[1].id
    })
}

pub fn period_vector(d: &ArcDiagram) -> Result<PeriodVector> {
    if !is_caravan(d) {
        return Err(Error::NotACaravan);
    }
    Ok(PeriodVector {
        genus: d.genus(),
        lengths: d.left_order().into_iter().map(|id| d.arc(id).length()).collect(),
    })
}

/// Left endpoints of the canonical layout for lengths given in left order.
///
/// Within a pair of lengths `(x, y)` the second arc starts `h` after the
/// first, where `h` is halfway between `max(0, x - y)` and `x`; the next pair
/// starts one unit after the current one ends.
pub fn canonical_lefts(lengths: &[Rational]) -> Vec<Rational> {
    let two = Rational::from_integer(Int::from(2));
    let one = Rational::from_integer(Int::from(1));
    let mut out = Vec::with_capacity(lengths.len());
    let mut x = Rational::zero();
    for pair in lengths.chunks(2) {
        let (a, b) = (&pair[0], &pair[1]);
        let over = if a > b { a - b } else { Rational::zero() };
        let h = (over + a) / &two;
        let second = &x + &h;
        let end = (&x + a).max(&second + b);
        out.push(x.clone());
        out.push(second);
        x = end + &one;
    }
    out
}

/// Builds the canonical caravan with the given periods. Arc ids follow left
/// order, and `basis_lattice[i]` is the lattice vector of the `i`-th arc.
pub fn caravan_from_periods(
    p: &PeriodVector,
    basis_lattice: &[Vec<Int>],
    basis_lengths: &[Rational],
) -> Result<ArcDiagram> {
    if p.lengths.iter().any(|x| !x.is_positive()) {
        return Err(Error::NonPositiveLength);
    }
    if basis_lattice.len() != p.lengths.len() {
        return Err(Error::BadArity {
            genus: p.genus,
            expected: p.lengths.len(),
            found: basis_lattice.len(),
        });
    }
    let lefts = canonical_lefts(&p.lengths);
    let arcs = lefts
        .iter()
        .zip(&p.lengths)
        .zip(basis_lattice)
        .enumerate()
        .map(|(i, ((l, len), lat))| Arc::new(i + 1, l.clone(), l + len, lat.clone()))
        .collect();
    new_diagram(arcs, basis_lengths.to_vec())
}

/// The caravan whose periods are the basis itself.
pub fn standard_caravan(lengths: &[Rational]) -> Result<ArcDiagram> {
    let p = PeriodVector::new(lengths.to_vec())?;
    let n = lengths.len();
    let lattice: Vec<Vec<Int>> = (0..n)
        .map(|i| (0..n).map(|j| Int::from((i == j) as i64)).collect())
        .collect();
    caravan_from_periods(&p, &lattice, lengths)
}

/// Left endpoints (by id) placing an existing caravan in canonical layout.
pub fn canonical_layout(d: &ArcDiagram) -> Result<Vec<Rational>> {
    let pv = period_vector(d)?;
    let lefts = canonical_lefts(&pv.lengths);
    let mut by_id = vec![Rational::zero(); lefts.len()];
    for (id, l) in d.left_order().into_iter().zip(lefts) {
        by_id[id - 1] = l;
    }
    Ok(by_id)
}

/// Default number of diagrams the reduction search may realize.
pub const DEFAULT_SEARCH_BUDGET: usize = 20_000;

/// Search budget from `ISOPERIOD_SEARCH_BUDGET`, falling back to the default.
pub fn search_budget() -> usize {
    std::env::var("ISOPERIOD_SEARCH_BUDGET")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_SEARCH_BUDGET)
}

/// Endpoint order plus lattice vectors: everything a move can change.
#[derive(Clone, PartialEq, Eq, Hash)]
struct Shape {
    order: Vec<(usize, End)>,
    lattice: Vec<Vec<Int>>,
}

impl Shape {
    fn of(d: &ArcDiagram) -> Shape {
        Shape {
            order: d.endpoints().into_iter().map(|p| (p.id, p.end)).collect(),
            lattice: d.arcs().iter().map(|a| a.lattice.clone()).collect(),
        }
    }

    fn index(&self, id: usize, e: End) -> usize {
        self.order
            .iter()
            .position(|&(i, x)| i == id && x == e)
            .expect("endpoint present")
    }

    /// Order and lattice after a legal Vasiliev move: the dragged endpoint
    /// reappears next to the far end of the fixed arc, on the side it came
    /// from; nothing else changes order.
    fn after(&self, moved: usize, end: End, fixed: usize, fixed_end: End) -> Shape {
        let ip = self.index(moved, end);
        let iq = self.index(fixed, fixed_end);
        let mut order = self.order.clone();
        order.remove(ip);
        let far = order
            .iter()
            .position(|&(i, x)| i == fixed && x == fixed_end.flip())
            .expect("endpoint present");
        let at = if ip > iq { far } else { far + 1 };
        order.insert(at, (moved, end));
        let sigma = if (end == End::Right) == (fixed_end == End::Left) {
            1
        } else {
            -1
        };
        let mut lattice = self.lattice.clone();
        let f = lattice[fixed - 1].clone();
        for (x, y) in lattice[moved - 1].iter_mut().zip(f) {
            *x += Int::from(sigma) * y;
        }
        Shape { order, lattice }
    }

    /// Crossing pairs beyond one per arc pair, plus nested pairs. Zero
    /// exactly on caravans of admissible diagrams.
    fn potential(&self, genus: usize) -> usize {
        let n = self.lattice.len();
        let mut span = vec![(0usize, 0usize); n];
        for (k, &(id, e)) in self.order.iter().enumerate() {
            match e {
                End::Left => span[id - 1].0 = k,
                End::Right => span[id - 1].1 = k,
            }
        }
        let (mut crossing, mut nested) = (0usize, 0usize);
        for i in 0..n {
            for j in i + 1..n {
                let (a, b) = (span[i], span[j]);
                let inside = |x: usize, s: (usize, usize)| s.0 < x && x < s.1;
                let (bl, br) = (inside(b.0, a), inside(b.1, a));
                if bl != br {
                    crossing += 1;
                } else if bl || inside(a.0, b) {
                    nested += 1;
                }
            }
        }
        crossing.saturating_sub(genus) + nested
    }
}

struct Node {
    parent: Option<usize>,
    step: Option<Move>,
    moves: Vec<Move>,
    diagram: Option<ArcDiagram>,
}

/// Transforms an admissible diagram into a caravan, using at most `budget`
/// realized intermediate diagrams.
pub fn reduce_to_caravan_with_budget(
    d: &ArcDiagram,
    budget: usize,
) -> Result<(ArcDiagram, Vec<Move>)> {
    if is_caravan(d) {
        return Ok((d.clone(), Vec::new()));
    }
    if !is_admissible(d) {
        return Err(Error::NotApplicable(
            "only admissible diagrams reduce to caravans".into(),
        ));
    }
    let g = d.genus();
    let n = d.arcs().len();
    let mut nodes = vec![Node {
        parent: None,
        step: None,
        moves: Vec::new(),
        diagram: Some(d.clone()),
    }];
    let mut seen: HashSet<Vec<(usize, End)>> = HashSet::new();
    let root = Shape::of(d);
    seen.insert(root.order.clone());
    let mut heap = BinaryHeap::new();
    let mut shapes = vec![root.clone()];
    let mut depth = vec![0usize];
    heap.push(Reverse((root.potential(g), 0usize, 0usize)));
    let mut explored = 0usize;
    let mut degenerate = None;

    while let Some(Reverse((_, _, idx))) = heap.pop() {
        if explored >= budget {
            break;
        }
        if nodes[idx].diagram.is_none() {
            let parent = nodes[idx].parent.expect("non-root");
            let base = nodes[parent].diagram.clone().expect("parent realized");
            let step = nodes[idx].step.clone().expect("non-root");
            explored += 1;
            match vasiliev_with_shifts(&base, &step) {
                Ok((out, moves)) => {
                    nodes[idx].diagram = Some(out);
                    nodes[idx].moves = moves;
                }
                Err(Error::DegenerateResult(msg)) => {
                    degenerate = Some(msg);
                    continue;
                }
                Err(Error::InternalCheckFailed(msg)) => {
                    return Err(Error::InternalCheckFailed(msg))
                }
                Err(_) => continue,
            }
        }
        let cur = nodes[idx].diagram.clone().expect("realized");
        if is_caravan(&cur) {
            let mut path = Vec::new();
            let mut at = Some(idx);
            while let Some(i) = at {
                path.push(std::mem::take(&mut nodes[i].moves));
                at = nodes[i].parent;
            }
            let moves: Vec<Move> = path.into_iter().rev().flatten().collect();
            return Ok((cur, moves));
        }
        let shape = shapes[idx].clone();
        for moved in 1..=n {
            for end in [End::Left, End::Right] {
                for fixed in (1..=n).filter(|&f| f != moved) {
                    for fe in [End::Left, End::Right] {
                        if !combinatorially_legal(&cur, moved, end, fixed, fe) {
                            continue;
                        }
                        let next = shape.after(moved, end, fixed, fe);
                        if !seen.insert(next.order.clone()) {
                            continue;
                        }
                        let pot = next.potential(g);
                        let dep = depth[idx] + 1;
                        let id = nodes.len();
                        nodes.push(Node {
                            parent: Some(idx),
                            step: Some(Move::vasiliev(moved, end, fixed, fe)),
                            moves: Vec::new(),
                            diagram: None,
                        });
                        shapes.push(next);
                        depth.push(dep);
                        heap.push(Reverse((pot, dep, id)));
                    }
                }
            }
        }
    }
    match degenerate {
        Some(msg) => Err(Error::DegenerateEncountered(msg)),
        None => Err(Error::SearchExhausted { explored }),
    }
}

pub fn reduce_to_caravan(d: &ArcDiagram) -> Result<(ArcDiagram, Vec<Move>)> {
    reduce_to_caravan_with_budget(d, search_budget())
}
