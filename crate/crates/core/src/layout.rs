//! Order-preserving rearrangement of diagrams.
//!
//! Shifts never change the combinatorics of a diagram, so any layout with the
//! same endpoint order is reachable. This module finds such layouts by solving
//! difference constraints on arc positions, and produces the shifts that reach
//! them. It is what turns a combinatorially legal Vasiliev move into a legal
//! one: the dragged endpoint is first brought close to the fixed arc so that
//! the carried endpoint and the landing spot stay clear of everything else.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::diagram::{arcs_cross, Arc, ArcDiagram, End};
use crate::error::{Error, Result};
use crate::moves::{apply_shift, apply_vasiliev, Move};
use crate::rational::{Int, Rational};

/// Largest power of two not exceeding a positive rational.
pub(crate) fn pow2_at_most(x: &Rational) -> Rational {
    debug_assert!(x.is_positive());
    let bits = |n: &BigInt| n.bits() as i64;
    let mut e = bits(x.numer()) - bits(x.denom());
    let pow = |e: i64| {
        if e >= 0 {
            Rational::from_integer(BigInt::one() << e as u64)
        } else {
            Rational::new(BigInt::one(), BigInt::one() << (-e) as u64)
        }
    };
    while pow(e) > *x {
        e -= 1;
    }
    while pow(e + 1) <= *x {
        e += 1;
    }
    pow(e)
}

/// Constraint `x[j] - x[i] <= w`.
type Edge = (usize, usize, Rational);

/// Shortest distances from `src`, or `None` on a negative cycle.
fn bellman_ford(n: usize, src: usize, edges: &[Edge]) -> Option<Vec<Rational>> {
    let mut dist: Vec<Option<Rational>> = vec![None; n];
    dist[src] = Some(Rational::zero());
    for round in 0..n {
        let mut changed = false;
        for (i, j, w) in edges {
            let Some(di) = &dist[*i] else { continue };
            let cand = di + w;
            if dist[*j].as_ref().is_none_or(|dj| cand < *dj) {
                dist[*j] = Some(cand);
                changed = true;
            }
        }
        if !changed {
            return dist.into_iter().collect();
        }
        if round == n - 1 {
            return None;
        }
    }
    None
}

/// A point of the feasible region away from its boundary: the midpoint of
/// the largest and the smallest solution. Variable `n` is the anchor.
fn central_solution(n: usize, edges: &[Edge]) -> Option<Vec<Rational>> {
    let hi = bellman_ford(n + 1, n, edges)?;
    let rev: Vec<Edge> = edges.iter().map(|(i, j, w)| (*j, *i, w.clone())).collect();
    let lo = bellman_ford(n + 1, n, &rev)?;
    let two = Rational::from_integer(Int::from(2));
    Some((0..n).map(|a| (&hi[a] - &lo[a]) / &two).collect())
}

/// Gap requirements between consecutive endpoints of `d`.
#[derive(Clone)]
struct Spacing<'a> {
    /// Lower bound on the gap after each endpoint, in endpoint order.
    floor: Vec<Rational>,
    /// Index `i` of a consecutive pair whose gap must lie in `[lo, hi]`.
    tight: Option<(usize, Rational, Rational)>,
    /// Arcs kept where they are.
    frozen: &'a dyn Fn(usize) -> bool,
    /// How far a free arc may travel.
    reach: Rational,
    /// Per-arc factors (by id) applied to `reach`.
    weight: Option<&'a [Rational]>,
}

/// Arc left endpoints (in id order) satisfying `spacing` with the endpoint
/// order of `d`, or `None` if the lengths make that impossible.
fn solve_layout(d: &ArcDiagram, spacing: &Spacing<'_>) -> Option<Vec<Rational>> {
    let n = d.arcs().len();
    let src = n;
    let pts = d.endpoints();
    let offset = |id: usize, e: End| match e {
        End::Left => Rational::zero(),
        End::Right => d.arc(id).length(),
    };
    let mut edges: Vec<Edge> = Vec::new();
    for (k, w) in pts.windows(2).enumerate() {
        let (u, v) = (&w[0], &w[1]);
        let (cu, cv) = (offset(u.id, u.end), offset(v.id, v.end));
        let (lo, hi) = match &spacing.tight {
            Some((i, lo, hi)) if *i == k => (lo.clone(), Some(hi.clone())),
            _ => (spacing.floor[k].clone(), None),
        };
        if u.id == v.id {
            let gap = &cv - &cu;
            if gap < lo || hi.as_ref().is_some_and(|h| gap > *h) {
                return None;
            }
            continue;
        }
        let (au, av) = (u.id - 1, v.id - 1);
        edges.push((av, au, &cv - &cu - &lo));
        if let Some(h) = hi {
            edges.push((au, av, h + &cu - &cv));
        }
    }
    for a in d.arcs() {
        let i = a.id - 1;
        let r = if (spacing.frozen)(a.id) {
            Rational::zero()
        } else {
            match spacing.weight {
                Some(w) => &spacing.reach * &w[i],
                None => spacing.reach.clone(),
            }
        };
        edges.push((src, i, &a.left + &r));
        edges.push((i, src, &r - &a.left));
    }
    central_solution(n, &edges)
}

/// How cheaply each arc (by id) moves, relative to the cheapest. An arc
/// crossing a short arc has to leapfrog it in steps no longer than that arc.
fn mobility(d: &ArcDiagram) -> Vec<Rational> {
    let arcs = d.arcs();
    let raw: Vec<Rational> = arcs
        .iter()
        .map(|a| {
            arcs.iter()
                .filter(|b| arcs_cross(a, b))
                .map(Arc::length)
                .fold(a.length(), |m, l| m.min(l))
        })
        .collect();
    let top = raw.iter().max().cloned().unwrap_or_else(Rational::one);
    raw.into_iter().map(|w| w / &top).collect()
}

fn span(d: &ArcDiagram) -> Rational {
    let pts = d.endpoints();
    &pts[pts.len() - 1].x - &pts[0].x
}

/// Moves every arc to the given left endpoint (indexed by id) using shifts
/// only. The target must have the same endpoint order as `d`.
pub fn walk(d: &ArcDiagram, target: &[Rational]) -> Result<(ArcDiagram, Vec<Move>)> {
    let mut cur = d.clone();
    let mut moves: Vec<Move> = Vec::new();
    for _ in 0..4096 {
        let pending: Vec<usize> = cur
            .arcs()
            .iter()
            .filter(|a| a.left != target[a.id - 1])
            .map(|a| a.id)
            .collect();
        if pending.is_empty() {
            return Ok((cur, merge_shifts(moves)));
        }
        let mut order = pending.clone();
        let delta = |cur: &ArcDiagram, id: usize| &target[id - 1] - &cur.arc(id).left;
        order.sort_by(|&a, &b| {
            let (da, db) = (delta(&cur, a), delta(&cur, b));
            let key = |d: &Rational, id: usize| {
                let x = cur.arc(id).left.clone();
                if d.is_negative() {
                    (0, x)
                } else {
                    (1, -x)
                }
            };
            key(&da, a).cmp(&key(&db, b))
        });
        let mut progress = false;
        for id in order {
            let want = delta(&cur, id);
            let travel = room(&cur, target, id, &want);
            let step = if travel >= want.abs() {
                want
            } else if want.is_positive() {
                travel
            } else {
                -travel
            };
            if step.is_zero() {
                continue;
            }
            if let Ok(next) = apply_shift(&cur, id, &step) {
                cur = next;
                moves.push(Move::shift(id, step));
                progress = true;
            }
        }
        if progress {
            continue;
        }
        // Everyone is blocked: advance all arcs a common fraction of the way,
        // small enough that no mixture of moved and unmoved arcs collides.
        let deltas: Vec<Rational> = cur
            .arcs()
            .iter()
            .map(|a| &target[a.id - 1] - &a.left)
            .collect();
        let delta = |id: usize| deltas[id - 1].clone();
        let mut bound: Option<Rational> = None;
        let mut tighten = |b: Rational| {
            if bound.as_ref().is_none_or(|x| b < *x) {
                bound = Some(b);
            }
        };
        for w in cur.endpoints().windows(2) {
            let (u, v) = (&w[0], &w[1]);
            if u.id == v.id {
                continue;
            }
            let gap = &v.x - &u.x;
            let (du, dv) = (delta(u.id), delta(v.id));
            if du.is_positive() {
                tighten(&gap / &du);
            }
            if dv.is_negative() {
                tighten(&gap / -&dv);
            }
            let closing = &du - &dv;
            if closing.is_positive() {
                tighten(&gap / closing);
            }
        }
        let step = match bound {
            Some(b) if b <= Rational::one() => {
                pow2_at_most(&(b / Rational::from_integer(Int::from(2))))
            }
            _ => Rational::one(),
        };
        for &id in &pending {
            let dl = delta(id) * &step;
            cur = apply_shift(&cur, id, &dl).map_err(|e| {
                Error::InternalCheckFailed(format!("interpolated shift failed: {e}"))
            })?;
            moves.push(Move::shift(id, dl));
        }
    }
    Err(Error::InternalCheckFailed(
        "layout walk did not converge".into(),
    ))
}

/// How far arc `id` can travel towards its target without overtaking an
/// endpoint, keeping half of the smaller of the current and the final gap.
fn room(cur: &ArcDiagram, target: &[Rational], id: usize, want: &Rational) -> Rational {
    let a = cur.arc(id);
    let ahead = want.is_positive();
    let final_pos = |id: usize, e: End| match e {
        End::Left => target[id - 1].clone(),
        End::Right => &target[id - 1] + cur.arc(id).length(),
    };
    let mut best: Option<Rational> = None;
    for e in [End::Left, End::Right] {
        let x = a.end(e);
        let blocker = cur
            .endpoints()
            .into_iter()
            .filter(|p| p.id != id && (if ahead { p.x > *x } else { p.x < *x }))
            .min_by_key(|p| (&p.x - x).abs());
        let Some(b) = blocker else { continue };
        let gap = (&b.x - x).abs();
        let fin = (final_pos(b.id, b.end) - final_pos(id, e)).abs();
        let keep = gap.clone().min(fin) / Rational::from_integer(Int::from(2));
        let limit = gap - keep;
        if best.as_ref().is_none_or(|x| limit < *x) {
            best = Some(limit);
        }
    }
    best.unwrap_or_else(|| want.abs())
}

/// Joins consecutive shifts of the same arc.
fn merge_shifts(moves: Vec<Move>) -> Vec<Move> {
    let mut out: Vec<Move> = Vec::with_capacity(moves.len());
    for m in moves {
        if let (Some(Move::Shift { arc: a, delta: d0 }), Move::Shift { arc, delta }) =
            (out.last_mut(), &m)
        {
            if a == arc {
                *d0 += delta;
                if d0.is_zero() {
                    out.pop();
                }
                continue;
            }
        }
        out.push(m);
    }
    out
}

/// Whether a Vasiliev move can be made legal by shifts alone, judged from the
/// endpoint order: the two endpoints must be neighbours and the moved arc
/// must not turn over.
pub fn combinatorially_legal(
    d: &ArcDiagram,
    moved: usize,
    end: End,
    fixed: usize,
    fixed_end: End,
) -> bool {
    let (Some(m), Some(f)) = (d.get(moved), d.get(fixed)) else {
        return false;
    };
    if moved == fixed {
        return false;
    }
    let pts = d.endpoints();
    let pos = |id: usize, e: End| {
        pts.iter()
            .position(|x| x.id == id && x.end == e)
            .expect("endpoint present")
    };
    let (ip, iq) = (pos(moved, end), pos(fixed, fixed_end));
    if ip.abs_diff(iq) != 1 {
        return false;
    }
    let o = m.end(end.flip());
    let q2 = f.end(fixed_end.flip());
    match end {
        End::Right => q2 > o,
        End::Left => q2 < o,
    }
}

/// Performs a Vasiliev move, preceded by whatever shifts it needs. Arcs other
/// than the two involved are left in place whenever that is possible.
pub fn vasiliev_with_shifts(d: &ArcDiagram, m: &Move) -> Result<(ArcDiagram, Vec<Move>)> {
    vasiliev_within(d, m, &[])
}

/// Like [`vasiliev_with_shifts`], but when the two arcs of the move cannot
/// make room on their own, arcs in `window` are moved before anything else.
pub fn vasiliev_within(
    d: &ArcDiagram,
    m: &Move,
    window: &[usize],
) -> Result<(ArcDiagram, Vec<Move>)> {
    let Move::Vasiliev {
        moved,
        fixed,
        end,
        fixed_end: Some(fixed_end),
    } = *m
    else {
        return Err(Error::NotApplicable(format!(
            "expected an explicit Vasiliev move, got `{m}`"
        )));
    };
    match apply_vasiliev(d, m) {
        Ok((out, _)) => return Ok((out, vec![m.clone()])),
        Err(e @ Error::InternalCheckFailed(_)) => return Err(e),
        Err(_) => {}
    }
    if !combinatorially_legal(d, moved, end, fixed, fixed_end) {
        return Err(Error::NotApplicable(format!(
            "`{m}`: endpoints are not neighbours or the arc would turn over"
        )));
    }
    let pts = d.endpoints();
    let ip = pts
        .iter()
        .position(|x| x.id == moved && x.end == end)
        .expect("endpoint present");
    let iq = pts
        .iter()
        .position(|x| x.id == fixed && x.end == fixed_end)
        .expect("endpoint present");
    let tight_at = ip.min(iq);

    let free_pair = move |id: usize| id != moved && id != fixed;
    let free_window = move |id: usize| free_pair(id) && !window.contains(&id);
    let nothing = |_: usize| false;
    let mut stages: Vec<&dyn Fn(usize) -> bool> = vec![&free_pair];
    if window.iter().any(|&id| free_pair(id)) {
        stages.push(&free_window);
    }
    stages.push(&nothing);

    let width = span(d);
    let far = width.clone() * Rational::from_integer(Int::from(4));
    let gaps: Vec<Rational> = pts.windows(2).map(|w| &w[1].x - &w[0].x).collect();
    let limit = Spacing {
        floor: vec![Rational::zero(); gaps.len()],
        tight: Some((tight_at, Rational::zero(), Rational::zero())),
        frozen: &nothing,
        reach: far.clone(),
        weight: None,
    };
    let weight = mobility(d);
    if solve_layout(d, &limit).is_none() {
        return Err(Error::NotApplicable(format!(
            "`{m}`: arc lengths keep the endpoints apart"
        )));
    }
    let two = Rational::from_integer(Int::from(2));
    let mu0 = pow2_at_most(&(&width / Rational::from_integer(Int::from(8 * d.genus()))));
    for frozen in stages {
        let stage_limit = Spacing { frozen, ..limit.clone() };
        if solve_layout(d, &stage_limit).is_none() {
            continue;
        }
        let mut mu = mu0.clone();
        for _ in 0..96 {
            // Existing gaps may shrink by half, and by more only once `mu`
            // drops below them; the endpoints then meet within a quarter of
            // the smallest gap, which keeps the move itself unobstructed.
            let floor: Vec<Rational> = gaps.iter().map(|g| (g / &two).min(mu.clone())).collect();
            let eps = floor
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != tight_at && pts[k].id != pts[k + 1].id)
                .map(|(_, f)| f.clone())
                .min()
                .unwrap_or_else(|| mu.clone())
                / Rational::from_integer(Int::from(4));
            let spacing = |reach: &Rational, weight| Spacing {
                floor: floor.clone(),
                tight: Some((tight_at, &eps / &two, eps.clone())),
                frozen,
                reach: reach.clone(),
                weight,
            };
            if solve_layout(d, &spacing(&far, None)).is_none() {
                mu /= &two;
                continue;
            }
            // the least travel that works, up to a factor of two, where
            // arcs that are slow to move count as travelling further
            let weighted = |r: &Rational| solve_layout(d, &spacing(r, Some(&weight)));
            let least = weight.iter().min().cloned().unwrap_or_else(Rational::one);
            let sixteen = Rational::from_integer(Int::from(16));
            let mut reach = pow2_at_most(&(&gaps[tight_at] / &two));
            let mut found = None;
            while &reach * &least < far {
                if let Some(t) = weighted(&reach) {
                    found = Some(t);
                    break;
                }
                reach *= &sixteen;
            }
            let target = match found {
                Some(mut t) => {
                    for div in [8, 4, 2] {
                        if let Some(better) = weighted(&(&reach / Rational::from_integer(Int::from(div)))) {
                            t = better;
                            break;
                        }
                    }
                    t
                }
                None => solve_layout(d, &spacing(&far, None)).expect("feasible at full reach"),
            };
            let (near, mut moves) = walk(d, &target)?;
            let (out, _) = apply_vasiliev(&near, m)?;
            moves.push(m.clone());
            return Ok((out, moves));
        }
    }
    Err(Error::NotApplicable(format!(
        "`{m}`: no layout brings the endpoints together"
    )))
}

/// Moves `d` onto the given left endpoints, which must describe the same
/// endpoint order.
pub fn relayout(d: &ArcDiagram, lefts: &[Rational]) -> Result<(ArcDiagram, Vec<Move>)> {
    walk(d, lefts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{new_diagram, Arc};
    use crate::moves::apply_sequence;
    use crate::rational::{int, rat};

    fn caravan2() -> ArcDiagram {
        new_diagram(
            vec![
                Arc::from_ints(1, 0, 2, &[1, 0, 0, 0]),
                Arc::from_ints(2, 1, 4, &[0, 1, 0, 0]),
                Arc::from_ints(3, 5, 12, &[0, 0, 1, 0]),
                Arc::from_ints(4, 6, 22, &[0, 0, 0, 1]),
            ],
            vec![int(2), int(3), int(7), int(16)],
        )
        .unwrap()
    }

    #[test]
    fn powers_of_two() {
        assert_eq!(pow2_at_most(&int(5)), int(4));
        assert_eq!(pow2_at_most(&int(4)), int(4));
        assert_eq!(pow2_at_most(&rat(1, 3)), rat(1, 4));
        assert_eq!(pow2_at_most(&rat(3, 1024)), rat(1, 512));
    }

    #[test]
    fn walk_reaches_target_and_replays() {
        let d = caravan2();
        let target = vec![int(-10), rat(-17, 2), int(40), rat(81, 2)];
        let (out, moves) = walk(&d, &target).unwrap();
        assert!(moves.iter().all(Move::is_shift));
        for a in out.arcs() {
            assert_eq!(a.left, target[a.id - 1]);
        }
        let (replayed, p) = apply_sequence(&d, &moves).unwrap();
        assert_eq!(replayed, out);
        assert!(p.is_identity());
    }

    #[test]
    fn far_endpoints_are_brought_together() {
        // the right end of arc 2 and the left end of arc 3 are neighbours but
        // a whole unit apart, while arc 1 sits close to arc 2
        let d = caravan2();
        let m = Move::vasiliev(2, End::Right, 3, End::Left);
        assert!(apply_vasiliev(&d, &m).is_err());
        assert!(combinatorially_legal(&d, 2, End::Right, 3, End::Left));
        let (out, moves) = vasiliev_with_shifts(&d, &m).unwrap();
        assert_eq!(moves.last(), Some(&m));
        let (replayed, _) = apply_sequence(&d, &moves).unwrap();
        assert_eq!(replayed, out);
        assert_eq!(out.arc(2).length(), int(10));
    }

    #[test]
    fn rigid_obstruction_is_reported() {
        // arc 3 reaches from inside arc 1 to inside arc 2 and is longer than
        // both together, so the facing ends of arcs 1 and 2 can never meet
        let d = new_diagram(
            vec![
                Arc::from_ints(1, 0, 2, &[1, 0, 0, 0]),
                Arc::from_ints(2, 6, 8, &[0, 1, 0, 0]),
                Arc::from_ints(3, 1, 7, &[0, 0, 1, 0]),
                Arc::from_ints(4, 9, 10, &[0, 0, 0, 1]),
            ],
            vec![int(2), int(2), int(6), int(1)],
        )
        .unwrap();
        assert!(combinatorially_legal(&d, 1, End::Right, 2, End::Left));
        let m = Move::vasiliev(1, End::Right, 2, End::Left);
        assert_eq!(vasiliev_with_shifts(&d, &m).unwrap_err().kind(), "NotApplicable");
    }
}
