//! Arc diagrams: the combinatorial shadow of a system of cuts.
//!
//! A diagram of genus `g` is a line carrying `4g` distinct rational points,
//! paired into `2g` arcs. Each arc also carries the coordinates of its length
//! in a fixed reference basis of the period module, so every position change
//! can be checked against the lattice exactly.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::rational::{combine, format_rational, serde_int_vec, serde_rational, Int, Rational};

/// Which endpoint of an arc.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum End {
    #[serde(rename = "L")]
    Left,
    #[serde(rename = "R")]
    Right,
}

impl End {
    pub fn flip(self) -> End {
        match self {
            End::Left => End::Right,
            End::Right => End::Left,
        }
    }

    pub fn letter(self) -> char {
        match self {
            End::Left => 'L',
            End::Right => 'R',
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Arc {
    pub id: usize,
    #[serde(with = "serde_rational")]
    pub left: Rational,
    #[serde(with = "serde_rational")]
    pub right: Rational,
    #[serde(with = "serde_int_vec")]
    pub lattice: Vec<Int>,
}

impl Arc {
    pub fn new(id: usize, left: Rational, right: Rational, lattice: Vec<Int>) -> Arc {
        Arc {
            id,
            left,
            right,
            lattice,
        }
    }

    /// Builds an arc from small integers, handy in tests and examples.
    pub fn from_ints(id: usize, left: i64, right: i64, lattice: &[i64]) -> Arc {
        Arc::new(
            id,
            Rational::from_integer(left.into()),
            Rational::from_integer(right.into()),
            lattice.iter().map(|&x| Int::from(x)).collect(),
        )
    }

    pub fn length(&self) -> Rational {
        &self.right - &self.left
    }

    pub fn end(&self, e: End) -> &Rational {
        match e {
            End::Left => &self.left,
            End::Right => &self.right,
        }
    }

    fn contains(&self, x: &Rational) -> bool {
        &self.left < x && x < &self.right
    }
}

/// Validated arc diagram. Arcs are stored in id order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ArcDiagram {
    genus: usize,
    basis: Vec<Rational>,
    arcs: Vec<Arc>,
}

/// One marked point of a diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Endpoint {
    pub x: Rational,
    pub id: usize,
    pub end: End,
}

/// `2g x 2g` skew-symmetric crossing matrix in canonical numbering.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionMatrix(pub IntMatrix);

impl IntersectionMatrix {
    pub fn matrix(&self) -> &IntMatrix {
        &self.0
    }

    /// Parity of the determinant, by elimination over GF(2).
    pub fn det_is_odd(&self) -> bool {
        let m = &self.0;
        let n = m.size();
        let mut rows: Vec<Vec<bool>> = (0..n)
            .map(|i| m.row(i).iter().map(|x| x.is_odd()).collect())
            .collect();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| rows[r][c]) else {
                return false;
            };
            rows.swap(p, c);
            for r in c + 1..n {
                if rows[r][c] {
                    for j in c..n {
                        let v = rows[c][j];
                        rows[r][j] ^= v;
                    }
                }
            }
        }
        true
    }
}

impl ArcDiagram {
    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn basis(&self) -> &[Rational] {
        &self.basis
    }

    /// Arcs in id order.
    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    /// Arc with the given id. Panics on an unknown id; use [`ArcDiagram::get`]
    /// for a checked lookup.
    pub fn arc(&self, id: usize) -> &Arc {
        &self.arcs[id - 1]
    }

    pub fn get(&self, id: usize) -> Option<&Arc> {
        id.checked_sub(1).and_then(|i| self.arcs.get(i))
    }

    /// All endpoints sorted by coordinate.
    pub fn endpoints(&self) -> Vec<Endpoint> {
        let mut pts: Vec<Endpoint> = self
            .arcs
            .iter()
            .flat_map(|a| {
                [
                    Endpoint {
                        x: a.left.clone(),
                        id: a.id,
                        end: End::Left,
                    },
                    Endpoint {
                        x: a.right.clone(),
                        id: a.id,
                        end: End::Right,
                    },
                ]
            })
            .collect();
        pts.sort_by(|a, b| a.x.cmp(&b.x));
        pts
    }

    /// Arc ids listed by increasing left endpoint.
    pub fn left_order(&self) -> Vec<usize> {
        let mut ids: Vec<usize> = (1..=self.arcs.len()).collect();
        ids.sort_by(|&a, &b| self.arc(a).left.cmp(&self.arc(b).left));
        ids
    }

    /// Smallest distance between two consecutive endpoints.
    pub fn min_gap(&self) -> Rational {
        self.endpoints()
            .windows(2)
            .map(|w| &w[1].x - &w[0].x)
            .min()
            .unwrap_or_else(Rational::zero)
    }

    /// Lattice vectors as rows, in id order.
    pub fn lattice_by_id(&self) -> IntMatrix {
        IntMatrix::from_rows(self.arcs.iter().map(|a| a.lattice.clone()).collect())
            .expect("lattice vectors have length 2g")
    }

    /// Lattice vectors as rows, in left-endpoint order.
    pub fn lattice_by_left(&self) -> IntMatrix {
        IntMatrix::from_rows(
            self.left_order()
                .into_iter()
                .map(|id| self.arc(id).lattice.clone())
                .collect(),
        )
        .expect("lattice vectors have length 2g")
    }

    /// Replaces one arc without revalidating. Callers keep the invariants.
    pub(crate) fn replace_arc(&self, arc: Arc) -> ArcDiagram {
        let mut d = self.clone();
        let i = arc.id - 1;
        d.arcs[i] = arc;
        d
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(DiagramDoc::from(self)).expect("diagram serializes")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(&DiagramDoc::from(self)).expect("diagram serializes")
    }

    /// Parses and validates a diagram document.
    pub fn from_json(text: &str) -> Result<ArcDiagram> {
        let doc: DiagramDoc =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        doc.into_diagram()
    }
}

impl fmt::Display for ArcDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, id) in self.left_order().into_iter().enumerate() {
            let a = self.arc(id);
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(
                f,
                "{}:({},{})",
                id,
                format_rational(&a.left),
                format_rational(&a.right)
            )?;
        }
        write!(f, "}}")
    }
}

/// Serialized form of a diagram.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DiagramDoc {
    pub genus: usize,
    #[serde(with = "serde_rational::vec")]
    pub basis: Vec<Rational>,
    pub arcs: Vec<Arc>,
}

impl From<&ArcDiagram> for DiagramDoc {
    fn from(d: &ArcDiagram) -> Self {
        DiagramDoc {
            genus: d.genus,
            basis: d.basis.clone(),
            arcs: d.arcs.clone(),
        }
    }
}

impl DiagramDoc {
    pub fn into_diagram(self) -> Result<ArcDiagram> {
        if self.basis.len() != 2 * self.genus {
            return Err(Error::BadArity {
                genus: self.genus,
                expected: 2 * self.genus,
                found: self.basis.len(),
            });
        }
        new_diagram(self.arcs, self.basis)
    }
}

/// Validates arcs against a reference basis. The genus is half the basis size.
pub fn new_diagram(arcs: Vec<Arc>, basis: Vec<Rational>) -> Result<ArcDiagram> {
    let n = basis.len();
    if n == 0 || !n.is_multiple_of(2) {
        return Err(Error::BadArc(format!(
            "basis must have a positive even number of entries, got {n}"
        )));
    }
    let genus = n / 2;
    if arcs.len() != n {
        return Err(Error::BadArity {
            genus,
            expected: n,
            found: arcs.len(),
        });
    }
    if let Some(b) = basis.iter().find(|b| !b.is_positive()) {
        return Err(Error::BadArc(format!(
            "basis entry {} is not positive",
            format_rational(b)
        )));
    }
    let mut slots: Vec<Option<Arc>> = vec![None; n];
    for a in arcs {
        if a.id == 0 || a.id > n {
            return Err(Error::BadArc(format!("id {} outside 1..={n}", a.id)));
        }
        if a.lattice.len() != n {
            return Err(Error::BadArc(format!(
                "arc {}: lattice vector has {} entries, expected {n}",
                a.id,
                a.lattice.len()
            )));
        }
        if a.left >= a.right {
            return Err(Error::BadArc(format!(
                "arc {}: left {} is not below right {}",
                a.id,
                format_rational(&a.left),
                format_rational(&a.right)
            )));
        }
        let slot = &mut slots[a.id - 1];
        if slot.is_some() {
            return Err(Error::BadArc(format!("id {} used twice", a.id)));
        }
        *slot = Some(a);
    }
    let arcs: Vec<Arc> = slots.into_iter().map(|a| a.expect("ids form a permutation")).collect();

    let mut seen = BTreeSet::new();
    for a in &arcs {
        for x in [&a.left, &a.right] {
            if !seen.insert(x.clone()) {
                return Err(Error::DuplicateEndpoint(format_rational(x)));
            }
        }
    }
    for a in &arcs {
        let expected = combine(&a.lattice, &basis);
        if expected != a.length() {
            return Err(Error::InconsistentLattice {
                id: a.id,
                length: format_rational(&a.length()),
                expected: format_rational(&expected),
            });
        }
    }
    Ok(ArcDiagram { genus, basis, arcs })
}

/// Arc ids ordered by increasing left endpoint; position `i` holds the id
/// that receives canonical number `i + 1`.
pub fn canonical_numbering(d: &ArcDiagram) -> Vec<usize> {
    d.left_order()
}

/// Exactly one endpoint of `b` lies strictly inside `a`.
pub fn arcs_cross(a: &Arc, b: &Arc) -> bool {
    a.contains(&b.left) != a.contains(&b.right)
}

pub fn intersection_matrix(d: &ArcDiagram) -> IntersectionMatrix {
    let order = d.left_order();
    let n = order.len();
    let mut m = IntMatrix::zeros(n);
    for i in 0..n {
        for j in i + 1..n {
            if arcs_cross(d.arc(order[i]), d.arc(order[j])) {
                m.set(i, j, Int::from(1));
                m.set(j, i, Int::from(-1));
            }
        }
    }
    IntersectionMatrix(m)
}

pub fn is_admissible(d: &ArcDiagram) -> bool {
    intersection_matrix(d).det_is_odd()
}

pub fn translate(d: &ArcDiagram, delta: &Rational) -> ArcDiagram {
    let mut out = d.clone();
    for a in &mut out.arcs {
        a.left += delta;
        a.right += delta;
    }
    out
}

/// Equality of diagrams modulo a global shift, ignoring arc ids.
pub fn same_up_to_translation(a: &ArcDiagram, b: &ArcDiagram) -> bool {
    if a.genus != b.genus || a.basis != b.basis {
        return false;
    }
    let min = |d: &ArcDiagram| d.arcs.iter().map(|x| x.left.clone()).min();
    let (Some(ma), Some(mb)) = (min(a), min(b)) else {
        return false;
    };
    let delta = mb - ma;
    let key = |d: &ArcDiagram, shift: &Rational| {
        let mut v: Vec<(Rational, Rational, Vec<Int>)> = d
            .arcs
            .iter()
            .map(|x| (&x.left + shift, &x.right + shift, x.lattice.clone()))
            .collect();
        v.sort();
        v
    };
    key(a, &delta) == key(b, &Rational::zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn basis(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| int(x)).collect()
    }

    fn one_caravan() -> ArcDiagram {
        new_diagram(
            vec![
                Arc::from_ints(1, 0, 2, &[1, 0]),
                Arc::from_ints(2, 1, 3, &[0, 1]),
            ],
            basis(&[2, 2]),
        )
        .unwrap()
    }

    fn caravan(g: usize) -> ArcDiagram {
        let mut arcs = Vec::new();
        for k in 0..g {
            let x = 4 * k as i64;
            let mut e = vec![0; 2 * g];
            e[2 * k] = 1;
            arcs.push(Arc::from_ints(2 * k + 1, x, x + 2, &e));
            let mut e = vec![0; 2 * g];
            e[2 * k + 1] = 1;
            arcs.push(Arc::from_ints(2 * k + 2, x + 1, x + 3, &e));
        }
        new_diagram(arcs, basis(&vec![2; 2 * g])).unwrap()
    }

    #[test]
    fn constructor_rejects_bad_input() {
        assert_eq!(one_caravan().genus(), 1);
        let dup = new_diagram(
            vec![
                Arc::from_ints(1, 0, 2, &[1, 0]),
                Arc::from_ints(2, 2, 3, &[0, 1]),
            ],
            vec![int(2), int(1)],
        );
        assert_eq!(dup.unwrap_err().kind(), "DuplicateEndpoint");
        let bad = new_diagram(
            vec![
                Arc::from_ints(1, 0, 2, &[1, 0]),
                Arc::from_ints(2, 1, 6, &[0, 1]),
            ],
            basis(&[3, 5]),
        );
        assert_eq!(bad.unwrap_err().kind(), "InconsistentLattice");
        let short = new_diagram(vec![Arc::from_ints(1, 0, 2, &[1, 0])], basis(&[2, 2]));
        assert_eq!(short.unwrap_err().kind(), "BadArity");
    }

    #[test]
    fn numbering_follows_left_endpoints() {
        assert_eq!(canonical_numbering(&one_caravan()), vec![1, 2]);
        let swapped = new_diagram(
            vec![
                Arc::from_ints(1, 5, 7, &[1, 0]),
                Arc::from_ints(2, 0, 3, &[0, 1]),
            ],
            basis(&[2, 3]),
        )
        .unwrap();
        assert_eq!(canonical_numbering(&swapped), vec![2, 1]);
        assert_eq!(canonical_numbering(&caravan(2)), vec![1, 2, 3, 4]);
    }

    #[test]
    fn crossing_cases() {
        let a = Arc::from_ints(1, 0, 2, &[]);
        let b = Arc::from_ints(2, 1, 3, &[]);
        assert!(arcs_cross(&a, &b) && arcs_cross(&b, &a));
        let outer = Arc::from_ints(1, 0, 3, &[]);
        let inner = Arc::from_ints(2, 1, 2, &[]);
        assert!(!arcs_cross(&outer, &inner) && !arcs_cross(&inner, &outer));
        let far = Arc::from_ints(2, 2, 3, &[]);
        assert!(!arcs_cross(&Arc::from_ints(1, 0, 1, &[]), &far));
    }

    #[test]
    fn caravan_matrices_are_standard_blocks() {
        let m = intersection_matrix(&one_caravan());
        assert_eq!(m.0, IntMatrix::from_i64(&[&[0, 1], &[-1, 0]]));
        let m2 = intersection_matrix(&caravan(2));
        assert_eq!(
            m2.0,
            IntMatrix::from_i64(&[&[0, 1, 0, 0], &[-1, 0, 0, 0], &[0, 0, 0, 1], &[0, 0, -1, 0]])
        );
        assert!(is_admissible(&caravan(3)));
        assert_eq!(intersection_matrix(&caravan(3)).0.det(), Int::from(1));
    }

    #[test]
    fn disjoint_arcs_are_not_admissible() {
        let d = new_diagram(
            vec![
                Arc::from_ints(1, 0, 1, &[1, 0]),
                Arc::from_ints(2, 2, 3, &[0, 1]),
            ],
            basis(&[1, 1]),
        )
        .unwrap();
        assert_eq!(intersection_matrix(&d).0, IntMatrix::zeros(2));
        assert!(!is_admissible(&d));
    }

    #[test]
    fn translation() {
        let d = one_caravan();
        assert_eq!(translate(&d, &int(0)), d);
        let t = translate(&d, &int(5));
        assert_eq!(t.arc(1).left, int(5));
        assert_eq!(t.arc(2).right, int(8));
        assert_eq!(translate(&t, &int(-5)), d);
        assert!(same_up_to_translation(&d, &translate(&d, &rat(7, 3))));
    }

    #[test]
    fn json_round_trip() {
        let d = translate(&caravan(2), &rat(1, 3));
        let back = ArcDiagram::from_json(&d.to_json_pretty()).unwrap();
        assert_eq!(back, d);
        let text = r#"{"genus":1,"basis":["2",2],"arcs":[
            {"id":1,"left":"0","right":"2","lattice":[1,0]},
            {"id":2,"left":1,"right":"3/1","lattice":[0,1]}]}"#;
        assert_eq!(ArcDiagram::from_json(text).unwrap(), one_caravan());
    }
}
