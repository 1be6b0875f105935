//! Shifts and Vasiliev moves, and their action on period coordinates.
//!
//! A Vasiliev move drags the endpoint `p` of the moved arc along the fixed
//! arc, starting from the fixed endpoint `q` adjacent to `p`, around the far
//! endpoint `q'`. With `d = p - q` the dragged endpoint lands at `q' - d`,
//! mirrored across the fixed arc, and the other endpoint `o` of the moved arc
//! is carried to `o - 2d`. The moved arc's length changes by exactly the fixed
//! arc's length, so on lattice vectors the move is a transvection.

use std::fmt;

use num_traits::{One, Zero};

use crate::diagram::{is_admissible, Arc, ArcDiagram, End};
use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::rational::{format_rational, parse_rational, Int, Rational};

/// Elementary matrix of a move, acting on lattice rows.
pub type MoveMatrix = IntMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Move {
    Shift {
        arc: usize,
        delta: Rational,
    },
    /// `fixed_end` names the endpoint `q` of the fixed arc next to the dragged
    /// endpoint. `None` resolves it from the diagram when exactly one choice
    /// is legal.
    Vasiliev {
        moved: usize,
        fixed: usize,
        end: End,
        fixed_end: Option<End>,
    },
}

impl Move {
    pub fn shift(arc: usize, delta: Rational) -> Move {
        Move::Shift { arc, delta }
    }

    pub fn vasiliev(moved: usize, end: End, fixed: usize, fixed_end: End) -> Move {
        Move::Vasiliev {
            moved,
            fixed,
            end,
            fixed_end: Some(fixed_end),
        }
    }

    pub fn is_shift(&self) -> bool {
        matches!(self, Move::Shift { .. })
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::Shift { arc, delta } => write!(f, "shift {arc} {}", format_rational(delta)),
            Move::Vasiliev {
                moved,
                fixed,
                end,
                fixed_end,
            } => {
                write!(f, "vasiliev {moved} {fixed} {}", end.letter())?;
                if let Some(fe) = fixed_end {
                    write!(f, " {}", fe.letter())?;
                }
                Ok(())
            }
        }
    }
}

fn not_applicable(msg: impl Into<String>) -> Error {
    Error::NotApplicable(msg.into())
}

fn lookup(d: &ArcDiagram, id: usize) -> Result<&Arc> {
    d.get(id)
        .ok_or_else(|| not_applicable(format!("no arc with id {id}")))
}

/// Displaces both endpoints of one arc without changing the endpoint order.
pub fn apply_shift(d: &ArcDiagram, arc_id: usize, delta: &Rational) -> Result<ArcDiagram> {
    let a = lookup(d, arc_id)?;
    let nl = &a.left + delta;
    let nr = &a.right + delta;
    for b in d.arcs().iter().filter(|b| b.id != arc_id) {
        for x in [&b.left, &b.right] {
            if *x == nl || *x == nr {
                return Err(Error::DuplicateEndpoint(format_rational(x)));
            }
            if (x < &a.left) != (x < &nl) || (x < &a.right) != (x < &nr) {
                return Err(Error::OrderChanged(arc_id));
            }
        }
    }
    Ok(d.replace_arc(Arc::new(arc_id, nl, nr, a.lattice.clone())))
}

/// Outcome of a legal Vasiliev move before it is committed.
struct Landing {
    arc: Arc,
    sigma: i32,
}

/// Sign of the transvection: the moved arc gains the fixed arc's length when
/// the dragged end and the starting end of the fixed arc are opposite.
fn sigma(end: End, fixed_end: End) -> i32 {
    if (end == End::Right) == (fixed_end == End::Left) {
        1
    } else {
        -1
    }
}

fn land(d: &ArcDiagram, moved: usize, fixed: usize, end: End, fixed_end: End) -> Result<Landing> {
    if moved == fixed {
        return Err(not_applicable("moved and fixed arc coincide"));
    }
    let m = lookup(d, moved)?;
    let f = lookup(d, fixed)?;
    let p = m.end(end);
    let o = m.end(end.flip());
    let q = f.end(fixed_end);
    let q2 = f.end(fixed_end.flip());

    let others: Vec<&Rational> = d
        .arcs()
        .iter()
        .filter(|a| a.id != moved)
        .flat_map(|a| [&a.left, &a.right])
        .collect();
    let between = |x: &Rational, a: &Rational, b: &Rational| {
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        lo < x && x < hi
    };

    if others.iter().chain([&o]).any(|x| between(x, p, q)) {
        return Err(not_applicable(format!(
            "endpoint {} of arc {moved} is not adjacent to endpoint {} of arc {fixed}",
            end.letter(),
            fixed_end.letter()
        )));
    }
    let dlt = p - q;
    let two = Rational::from_integer(Int::from(2));
    let o_new = o - &two * &dlt;
    let p_new = q2 - &dlt;

    for x in &others {
        if **x == o_new || **x == p_new {
            return Err(Error::DegenerateResult(format!(
                "endpoint lands on {}",
                format_rational(x)
            )));
        }
        if between(x, o, &o_new) {
            return Err(not_applicable(format!(
                "endpoint {} blocks the far end of arc {moved}",
                format_rational(x)
            )));
        }
    }
    if o_new == p_new {
        return Err(Error::DegenerateResult(format!(
            "arc {moved} collapses to a point"
        )));
    }
    if others
        .iter()
        .copied()
        .chain([&o_new])
        .any(|x| between(x, q2, &p_new))
    {
        return Err(not_applicable(format!(
            "landing of arc {moved} around arc {fixed} is obstructed"
        )));
    }
    let (nl, nr) = match end {
        End::Left => (p_new, o_new),
        End::Right => (o_new, p_new),
    };
    if nl >= nr {
        return Err(Error::DegenerateResult(format!("arc {moved} would flip")));
    }
    let s = sigma(end, fixed_end);
    let lattice = m
        .lattice
        .iter()
        .zip(&f.lattice)
        .map(|(a, b)| a + Int::from(s) * b)
        .collect();
    Ok(Landing {
        arc: Arc::new(moved, nl, nr, lattice),
        sigma: s,
    })
}

/// Fills in an unspecified fixed endpoint. Fails when neither or both
/// choices are legal.
pub fn resolve(d: &ArcDiagram, m: &Move) -> Result<Move> {
    match m {
        Move::Shift { .. } => Ok(m.clone()),
        Move::Vasiliev {
            fixed_end: Some(_), ..
        } => Ok(m.clone()),
        Move::Vasiliev {
            moved,
            fixed,
            end,
            fixed_end: None,
        } => {
            let legal: Vec<End> = [End::Left, End::Right]
                .into_iter()
                .filter(|&fe| land(d, *moved, *fixed, *end, fe).is_ok())
                .collect();
            match legal.as_slice() {
                [fe] => Ok(Move::vasiliev(*moved, *end, *fixed, *fe)),
                [] => Err(not_applicable(format!(
                    "no legal way to drag endpoint {} of arc {moved} along arc {fixed}",
                    end.letter()
                ))),
                _ => Err(not_applicable(format!(
                    "dragging endpoint {} of arc {moved} along arc {fixed} is ambiguous",
                    end.letter()
                ))),
            }
        }
    }
}

fn explicit(m: &Move) -> Option<(usize, usize, End, End)> {
    match m {
        Move::Vasiliev {
            moved,
            fixed,
            end,
            fixed_end: Some(fe),
        } => Some((*moved, *fixed, *end, *fe)),
        _ => None,
    }
}

pub fn vasiliev_applicable(d: &ArcDiagram, m: &Move) -> bool {
    if m.is_shift() {
        return false;
    }
    match resolve(d, m) {
        Ok(r) => {
            let (moved, fixed, end, fe) = explicit(&r).expect("resolved");
            land(d, moved, fixed, end, fe).is_ok()
        }
        Err(_) => false,
    }
}

/// Applies a Vasiliev move. The matrix is in the canonical numbering of `d`.
pub fn apply_vasiliev(d: &ArcDiagram, m: &Move) -> Result<(ArcDiagram, MoveMatrix)> {
    let r = resolve(d, m)?;
    let Some((moved, fixed, end, fe)) = explicit(&r) else {
        return Err(not_applicable("not a Vasiliev move"));
    };
    let landing = land(d, moved, fixed, end, fe)?;
    let out = d.replace_arc(landing.arc);
    if is_admissible(d) && !is_admissible(&out) {
        return Err(Error::InternalCheckFailed(format!(
            "move `{r}` broke admissibility"
        )));
    }
    let order = d.left_order();
    let pos = |id: usize| order.iter().position(|&x| x == id).expect("arc present");
    Ok((out, transvection(d.arcs().len(), pos(moved), pos(fixed), landing.sigma)))
}

fn transvection(n: usize, i: usize, j: usize, s: i32) -> IntMatrix {
    let mut e = IntMatrix::identity(n);
    e.set(i, j, Int::from(s));
    e
}

pub fn move_matrix(d: &ArcDiagram, m: &Move) -> Result<MoveMatrix> {
    match m {
        Move::Shift { arc, delta } => {
            apply_shift(d, *arc, delta)?;
            Ok(IntMatrix::identity(d.arcs().len()))
        }
        Move::Vasiliev { .. } => apply_vasiliev(d, m).map(|(_, e)| e),
    }
}

/// The move undoing `m` on `d`. For a Vasiliev move the same endpoint is
/// dragged back along the same arc, starting from the opposite fixed end.
pub fn inverse_move(d: &ArcDiagram, m: &Move) -> Result<Move> {
    match resolve(d, m)? {
        Move::Shift { arc, delta } => Ok(Move::shift(arc, -delta)),
        r => {
            let (moved, fixed, end, fe) = explicit(&r).expect("resolved");
            Ok(Move::vasiliev(moved, end, fixed, fe.flip()))
        }
    }
}

/// Applies one move, returning the elementary matrix in arc-id numbering.
pub fn apply_move(d: &ArcDiagram, m: &Move) -> Result<(ArcDiagram, IntMatrix)> {
    let n = d.arcs().len();
    match m {
        Move::Shift { arc, delta } => Ok((apply_shift(d, *arc, delta)?, IntMatrix::identity(n))),
        Move::Vasiliev { .. } => {
            let r = resolve(d, m)?;
            let (moved, fixed, end, fe) = explicit(&r).expect("resolved");
            let (out, _) = apply_vasiliev(d, &r)?;
            Ok((out, transvection(n, moved - 1, fixed - 1, sigma(end, fe))))
        }
    }
}

/// Replays a move list. The returned matrix `P` satisfies
/// `lattice_by_id(result) = P * lattice_by_id(d)`.
pub fn apply_sequence(d: &ArcDiagram, ms: &[Move]) -> Result<(ArcDiagram, IntMatrix)> {
    let mut cur = d.clone();
    let mut prod = IntMatrix::identity(d.arcs().len());
    for (i, m) in ms.iter().enumerate() {
        let (next, e) = apply_move(&cur, m).map_err(|e| Error::at(i, e))?;
        prod = &e * &prod;
        cur = next;
    }
    Ok((cur, prod))
}

/// Every explicit Vasiliev move legal on `d`, in a fixed order.
pub fn legal_vasiliev_moves(d: &ArcDiagram) -> Vec<Move> {
    let n = d.arcs().len();
    let mut out = Vec::new();
    for moved in 1..=n {
        for end in [End::Left, End::Right] {
            for fixed in (1..=n).filter(|&f| f != moved) {
                for fe in [End::Left, End::Right] {
                    if land(d, moved, fixed, end, fe).is_ok() {
                        out.push(Move::vasiliev(moved, end, fixed, fe));
                    }
                }
            }
        }
    }
    out
}

fn parse_end(tok: &str) -> Result<End> {
    match tok {
        "L" | "l" => Ok(End::Left),
        "R" | "r" => Ok(End::Right),
        _ => Err(Error::Parse(format!("expected L or R, got {tok:?}"))),
    }
}

fn parse_id(tok: &str) -> Result<usize> {
    tok.parse()
        .map_err(|_| Error::Parse(format!("expected an arc id, got {tok:?}")))
}

/// Reads a move script: one move per line, `#` starts a comment.
pub fn parse_script(text: &str) -> Result<Vec<Move>> {
    let mut out = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        let bad = || Error::Parse(format!("line {}: cannot read {line:?}", n + 1));
        let m = match toks.as_slice() {
            ["shift", id, delta] => {
                let delta = parse_rational(delta)?;
                if delta.is_zero() {
                    return Err(Error::Parse(format!("line {}: zero shift", n + 1)));
                }
                Move::shift(parse_id(id)?, delta)
            }
            ["vasiliev", moved, fixed, end] => Move::Vasiliev {
                moved: parse_id(moved)?,
                fixed: parse_id(fixed)?,
                end: parse_end(end)?,
                fixed_end: None,
            },
            ["vasiliev", moved, fixed, end, fe] => Move::Vasiliev {
                moved: parse_id(moved)?,
                fixed: parse_id(fixed)?,
                end: parse_end(end)?,
                fixed_end: Some(parse_end(fe)?),
            },
            _ => return Err(bad()),
        };
        out.push(m);
    }
    Ok(out)
}

pub fn format_script(ms: &[Move]) -> String {
    ms.iter().map(|m| format!("{m}\n")).collect()
}

/// Identity plus exactly one off-diagonal entry equal to `±1`.
pub fn is_elementary(e: &IntMatrix) -> bool {
    let n = e.size();
    let mut off = 0;
    for i in 0..n {
        for j in 0..n {
            let x = e.get(i, j);
            if i == j {
                if !x.is_one() {
                    return false;
                }
            } else if !x.is_zero() {
                if !x.magnitude().is_one() {
                    return false;
                }
                off += 1;
            }
        }
    }
    off == 1
}
