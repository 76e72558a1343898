//! Group-type braided vector spaces: set-theoretic Yang-Baxter solutions
//! with diagonal phase twists, Yetter-Drinfeld braidings over finite
//! groups, and the twisted-coefficient formulas gamma, mu derived from a
//! 3-cocycle.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::bvs::Bvs;
use crate::cyclo::{CycMatrix, CycNum};
use crate::{Error, Result};

// ---------------------------------------------------------------------------
// Set-theoretic solutions
// ---------------------------------------------------------------------------

/// A map `S : X x X -> X x X`, stored as a table indexed by `x * |X| + y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetSolution {
    size: usize,
    map: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SetReport {
    pub bijective: bool,
    pub braid_holds: bool,
    /// First triple `(x, y, z)` where the two sides of the braid equation
    /// disagree.
    pub first_failure: Option<(usize, usize, usize)>,
    pub holds: bool,
}

impl SetSolution {
    pub fn new(size: usize, map: Vec<(usize, usize)>) -> Result<Self> {
        if size == 0 {
            return Err(Error::Invariant {
                name: "size".into(),
                detail: "set must be nonempty".into(),
            });
        }
        if map.len() != size * size {
            return Err(Error::ShapeMismatch(format!(
                "solution table for |X| = {size} needs {} pairs, got {}",
                size * size,
                map.len()
            )));
        }
        for &(a, b) in &map {
            if a >= size || b >= size {
                return Err(Error::IndexOutOfRange(format!(
                    "pair ({a}, {b}) out of range for |X| = {size}"
                )));
            }
        }
        Ok(SetSolution { size, map })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, x: usize, y: usize) -> (usize, usize) {
        self.map[x * self.size + y]
    }

    /// The flip `S(x, y) = (y, x)`.
    pub fn flip(size: usize) -> Self {
        let mut map = Vec::with_capacity(size * size);
        for x in 0..size {
            for y in 0..size {
                map.push((y, x));
            }
        }
        SetSolution { size, map }
    }

    /// The identity `S(x, y) = (x, y)`.
    pub fn identity(size: usize) -> Self {
        let mut map = Vec::with_capacity(size * size);
        for x in 0..size {
            for y in 0..size {
                map.push((x, y));
            }
        }
        SetSolution { size, map }
    }

    /// The conjugation solution `S(x, y) = (x y x^{-1}, x)` on a group.
    pub fn conjugation(group: &FiniteGroup) -> Self {
        let n = group.order();
        let mut map = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                map.push((group.mul(group.mul(x, y), group.inv(x)), x));
            }
        }
        SetSolution { size: n, map }
    }

    fn is_bijective(&self) -> bool {
        let mut seen = vec![false; self.size * self.size];
        for &(a, b) in &self.map {
            let idx = a * self.size + b;
            if seen[idx] {
                return false;
            }
            seen[idx] = true;
        }
        true
    }

    /// Verifies bijectivity and the braid equation
    /// `(S x id)(id x S)(S x id) = (id x S)(S x id)(id x S)` on all triples.
    pub fn check_set_theoretic(&self) -> SetReport {
        let bijective = self.is_bijective();
        let s12 = |(x, y, z): (usize, usize, usize)| {
            let (a, b) = self.get(x, y);
            (a, b, z)
        };
        let s23 = |(x, y, z): (usize, usize, usize)| {
            let (a, b) = self.get(y, z);
            (x, a, b)
        };
        let mut first_failure = None;
        for x in 0..self.size {
            for y in 0..self.size {
                for z in 0..self.size {
                    let t = (x, y, z);
                    let lhs = s12(s23(s12(t)));
                    let rhs = s23(s12(s23(t)));
                    if lhs != rhs {
                        first_failure = Some(t);
                        break;
                    }
                }
            }
        }
        let braid_holds = first_failure.is_none();
        SetReport { bijective, braid_holds, first_failure, holds: bijective && braid_holds }
    }
}

// JSON: {"size": n, "S": [[[x',y'],...],...]} with S[x][y] = [s1, s2].
impl Serialize for SetSolution {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("SetSolution", 2)?;
        st.serialize_field("size", &self.size)?;
        let rows: Vec<Vec<[usize; 2]>> = (0..self.size)
            .map(|x| (0..self.size).map(|y| { let (a, b) = self.get(x, y); [a, b] }).collect())
            .collect();
        st.serialize_field("S", &rows)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for SetSolution {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            size: usize,
            #[serde(rename = "S")]
            s: Vec<Vec<[usize; 2]>>,
        }
        let raw = Raw::deserialize(deserializer)?;
        let mut map = Vec::with_capacity(raw.size * raw.size);
        if raw.s.len() != raw.size {
            return Err(D::Error::custom("S must have `size` rows"));
        }
        for row in &raw.s {
            if row.len() != raw.size {
                return Err(D::Error::custom("S must have `size` columns per row"));
            }
            for &[a, b] in row {
                map.push((a, b));
            }
        }
        SetSolution::new(raw.size, map).map_err(|e| D::Error::custom(e.to_string()))
    }
}

// ---------------------------------------------------------------------------
// Phase twists
// ---------------------------------------------------------------------------

/// A table of root-of-unity phases `q_{x,y}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhaseTwist {
    size: usize,
    phases: Vec<CycNum>,
}

impl PhaseTwist {
    pub fn new(size: usize, phases: Vec<CycNum>) -> Result<Self> {
        if phases.len() != size * size {
            return Err(Error::ShapeMismatch(format!(
                "twist for |X| = {size} needs {} phases, got {}",
                size * size,
                phases.len()
            )));
        }
        for (idx, p) in phases.iter().enumerate() {
            if p.root_of_unity_order().is_none() {
                return Err(Error::invariant(
                    "root of unity",
                    format!("phase at ({}, {}) is {p}, not a root of unity", idx / size, idx % size),
                ));
            }
        }
        Ok(PhaseTwist { size, phases })
    }

    pub fn trivial(size: usize) -> Self {
        PhaseTwist { size, phases: vec![CycNum::one(); size * size] }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, x: usize, y: usize) -> &CycNum {
        &self.phases[x * self.size + y]
    }

    pub fn set(&mut self, x: usize, y: usize, phase: CycNum) -> Result<()> {
        if phase.root_of_unity_order().is_none() {
            return Err(Error::invariant("root of unity", format!("{phase}")));
        }
        self.phases[x * self.size + y] = phase;
        Ok(())
    }
}

// JSON: {"phases": [[{"k":k,"N":N} | CycNum, ...], ...]} meaning zeta_N^k.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum PhaseEntry {
    Root { k: i64, #[serde(rename = "N")] n: u64 },
    Num(CycNum),
}

impl Serialize for PhaseTwist {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let rows: Vec<Vec<PhaseEntry>> = (0..self.size)
            .map(|x| {
                (0..self.size)
                    .map(|y| PhaseEntry::Num(self.get(x, y).clone()))
                    .collect()
            })
            .collect();
        let mut st = serializer.serialize_struct("PhaseTwist", 1)?;
        st.serialize_field("phases", &rows)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for PhaseTwist {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            phases: Vec<Vec<PhaseEntry>>,
        }
        let raw = Raw::deserialize(deserializer)?;
        let size = raw.phases.len();
        let mut phases = Vec::with_capacity(size * size);
        for row in raw.phases {
            if row.len() != size {
                return Err(D::Error::custom("phase table must be square"));
            }
            for e in row {
                phases.push(match e {
                    PhaseEntry::Root { k, n } => {
                        if n == 0 {
                            return Err(D::Error::custom("phase conductor must be positive"));
                        }
                        CycNum::root_of_unity(k, n)
                    }
                    PhaseEntry::Num(c) => c,
                });
            }
        }
        PhaseTwist::new(size, phases).map_err(|e| D::Error::custom(e.to_string()))
    }
}

/// Linearization `c(v_x tensor v_y) = q_{x,y} v_{s1} tensor v_{s2}` of a
/// set-theoretic solution with a diagonal phase twist. Rejects twists that
/// break the braid equation, naming a failing triple.
pub fn linearize(s: &SetSolution, t: &PhaseTwist) -> Result<Bvs> {
    if s.size() != t.size() {
        return Err(Error::ShapeMismatch(format!(
            "solution on |X| = {} vs twist on |X| = {}",
            s.size(),
            t.size()
        )));
    }
    let n = s.size();
    let d2 = n * n;
    let mut c = CycMatrix::zero(d2, d2);
    for x in 0..n {
        for y in 0..n {
            let (a, b) = s.get(x, y);
            c.set(a * n + b, x * n + y, t.get(x, y).clone());
        }
    }
    let bvs = Bvs::new(n, c)?;
    let report = bvs.check_ybe()?;
    if !report.holds {
        let (_, col) = report.first_discrepancy.expect("failing check carries a witness");
        let triple = (col / (n * n), (col / n) % n, col % n);
        return Err(Error::TwistBreaksYbe(triple));
    }
    Ok(bvs)
}

// ---------------------------------------------------------------------------
// Finite groups
// ---------------------------------------------------------------------------

/// A finite group given by its Cayley table. Associativity, identity and
/// inverses are checked at construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    pub fn new(order: usize, table: Vec<usize>) -> Result<Self> {
        if order == 0 {
            return Err(Error::invariant("order", "group must be nonempty"));
        }
        if table.len() != order * order {
            return Err(Error::ShapeMismatch(format!(
                "Cayley table for order {order} needs {} entries, got {}",
                order * order,
                table.len()
            )));
        }
        for &e in &table {
            if e >= order {
                return Err(Error::invariant("closure", format!("entry {e} out of range")));
            }
        }
        let mul = |a: usize, b: usize| table[a * order + b];
        let identity = (0..order)
            .find(|&e| (0..order).all(|x| mul(e, x) == x && mul(x, e) == x))
            .ok_or_else(|| Error::invariant("identity", "no two-sided identity"))?;
        for a in 0..order {
            for b in 0..order {
                for c in 0..order {
                    if mul(mul(a, b), c) != mul(a, mul(b, c)) {
                        return Err(Error::invariant(
                            "associativity",
                            format!("({a}*{b})*{c} != {a}*({b}*{c})"),
                        ));
                    }
                }
            }
        }
        let mut inverse = Vec::with_capacity(order);
        for a in 0..order {
            inverse.push(
                (0..order)
                    .find(|&b| mul(a, b) == identity && mul(b, a) == identity)
                    .ok_or_else(|| Error::invariant("inverses", format!("{a} has no inverse")))?,
            );
        }
        Ok(FiniteGroup { order, table, identity, inverse })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn conjugacy_class(&self, x: usize) -> Vec<usize> {
        let mut class: Vec<usize> = (0..self.order).map(|g| self.conj(g, x)).collect();
        class.sort_unstable();
        class.dedup();
        class
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// `Z/n` with elements `0..n` and addition mod `n`.
    pub fn cyclic(n: usize) -> Self {
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                table.push((a + b) % n);
            }
        }
        Self::new(n, table).expect("cyclic group is a group")
    }

    /// The symmetric group on `k` letters (`k <= 5` is plenty at desk
    /// scale), elements in lexicographic one-line order.
    pub fn symmetric(k: usize) -> Self {
        let perms = permutations(k);
        let index = |p: &[usize]| perms.iter().position(|q| q == p).unwrap();
        let n = perms.len();
        let mut table = Vec::with_capacity(n * n);
        for a in &perms {
            for b in &perms {
                // (a b)(i) = a(b(i))
                let c: Vec<usize> = (0..k).map(|i| a[b[i]]).collect();
                table.push(index(&c));
            }
        }
        Self::new(n, table).expect("symmetric group is a group")
    }
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..k {
        let mut next = Vec::new();
        for p in &out {
            for x in 0..k {
                if !p.contains(&x) {
                    let mut q = p.clone();
                    q.push(x);
                    next.push(q);
                }
            }
        }
        out = next;
    }
    out.sort();
    out
}

// JSON: {"order": n, "table": [[...], ...]}.
impl Serialize for FiniteGroup {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let rows: Vec<&[usize]> =
            (0..self.order).map(|a| &self.table[a * self.order..(a + 1) * self.order]).collect();
        let mut st = serializer.serialize_struct("FiniteGroup", 2)?;
        st.serialize_field("order", &self.order)?;
        st.serialize_field("table", &rows)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for FiniteGroup {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            order: usize,
            table: Vec<Vec<usize>>,
        }
        let raw = Raw::deserialize(deserializer)?;
        let flat: Vec<usize> = raw.table.into_iter().flatten().collect();
        FiniteGroup::new(raw.order, flat).map_err(|e| D::Error::custom(e.to_string()))
    }
}

// ---------------------------------------------------------------------------
// Yetter-Drinfeld modules
// ---------------------------------------------------------------------------

/// A `G`-graded space with a candidate `G`-action: `grading[k]` is the
/// degree of basis vector `k`, `action[g]` the matrix of `g`.
#[derive(Clone, Debug)]
pub struct YdModule {
    group: FiniteGroup,
    dim: usize,
    grading: Vec<usize>,
    action: Vec<CycMatrix>,
}

impl YdModule {
    pub fn new(
        group: FiniteGroup,
        grading: Vec<usize>,
        action: Vec<CycMatrix>,
    ) -> Result<Self> {
        let dim = grading.len();
        if dim == 0 {
            return Err(Error::invariant("dimension", "module must be nonzero"));
        }
        for &g in &grading {
            if g >= group.order() {
                return Err(Error::IndexOutOfRange(format!("degree {g}")));
            }
        }
        if action.len() != group.order() {
            return Err(Error::ShapeMismatch(format!(
                "need one action matrix per group element ({}), got {}",
                group.order(),
                action.len()
            )));
        }
        for a in &action {
            if a.rows() != dim || a.cols() != dim {
                return Err(Error::ShapeMismatch(format!(
                    "action matrices must be {dim}x{dim}"
                )));
            }
        }
        Ok(YdModule { group, dim, grading, action })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn grading(&self) -> &[usize] {
        &self.grading
    }

    pub fn action(&self, g: usize) -> &CycMatrix {
        &self.action[g]
    }

    /// The span of a conjugacy class with the conjugation action (a plain
    /// permutation Yetter-Drinfeld module).
    pub fn conjugation_module(group: &FiniteGroup, class_rep: usize) -> Self {
        let class = group.conjugacy_class(class_rep);
        let dim = class.len();
        let pos = |x: usize| class.iter().position(|&y| y == x).unwrap();
        let action = (0..group.order())
            .map(|g| {
                CycMatrix::from_fn(dim, dim, |r, c| {
                    if pos(group.conj(g, class[c])) == r {
                        CycNum::one()
                    } else {
                        CycNum::zero()
                    }
                })
            })
            .collect();
        YdModule { group: group.clone(), dim, grading: class, action }
    }

    /// Checks the untwisted Yetter-Drinfeld axioms: identity acts as the
    /// identity, the action is a genuine representation, and
    /// `sigma . V_tau` lands in `V_{sigma tau sigma^{-1}}`.
    pub fn validate_untwisted(&self) -> Result<()> {
        let g = &self.group;
        if !self.action[g.identity()].is_identity() {
            return Err(Error::AxiomViolation("identity element must act as I".into()));
        }
        for a in 0..g.order() {
            for b in 0..g.order() {
                let lhs = &self.action[g.mul(a, b)];
                let rhs = self.action[a].mul(&self.action[b])?;
                if *lhs != rhs {
                    return Err(Error::AxiomViolation(format!(
                        "action is not a representation at ({a}, {b})"
                    )));
                }
            }
        }
        self.validate_grading()
    }

    /// Grading compatibility alone (shared by twisted and untwisted cases).
    pub fn validate_grading(&self) -> Result<()> {
        let g = &self.group;
        for sigma in 0..g.order() {
            for k in 0..self.dim {
                let target = g.conj(sigma, self.grading[k]);
                for r in 0..self.dim {
                    if !self.action[sigma].get(r, k).is_zero() && self.grading[r] != target {
                        return Err(Error::AxiomViolation(format!(
                            "sigma V_tau not in V_{{sigma tau sigma^-1}} at sigma={sigma}, basis {k}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// The Yetter-Drinfeld braiding `c(v tensor w) = (deg v . w) tensor v` of
/// an untwisted module, as a BVS. The axioms are verified first and the
/// returned BVS passes the Yang-Baxter check.
pub fn yd_braiding(v: &YdModule) -> Result<Bvs> {
    v.validate_untwisted()?;
    let d = v.dim();
    let mut c = CycMatrix::zero(d * d, d * d);
    for k in 0..d {
        let a = v.action(v.grading()[k]);
        for l in 0..d {
            for r in 0..d {
                let e = a.get(r, l);
                if !e.is_zero() {
                    c.set(r * d + k, k * d + l, e.clone());
                }
            }
        }
    }
    let bvs = Bvs::new(d, c)?;
    let report = bvs.check_ybe()?;
    if !report.holds {
        return Err(Error::YbeFails(report.first_discrepancy.unwrap()));
    }
    Ok(bvs)
}

/// Group-type braiding `c(x_i tensor z) = g_i(z) tensor x_i` from a list
/// of invertible operators, one per basis vector. Validity is certified by
/// running the Yang-Baxter check.
pub fn bvs_from_group_type_data(generators: &[CycMatrix], dim: usize) -> Result<Bvs> {
    if generators.len() != dim {
        return Err(Error::ShapeMismatch(format!(
            "need {dim} operators, got {}",
            generators.len()
        )));
    }
    for g in generators {
        if g.rows() != dim || g.cols() != dim {
            return Err(Error::ShapeMismatch(format!("operators must be {dim}x{dim}")));
        }
        if !g.is_invertible() {
            return Err(Error::NotInvertible);
        }
    }
    let mut c = CycMatrix::zero(dim * dim, dim * dim);
    for (i, gi) in generators.iter().enumerate() {
        for j in 0..dim {
            for r in 0..dim {
                let e = gi.get(r, j);
                if !e.is_zero() {
                    c.set(r * dim + i, i * dim + j, e.clone());
                }
            }
        }
    }
    let bvs = Bvs::new(dim, c)?;
    let report = bvs.check_ybe()?;
    if !report.holds {
        return Err(Error::YbeFails(report.first_discrepancy.unwrap()));
    }
    Ok(bvs)
}

// ---------------------------------------------------------------------------
// 3-cocycles and twisted coefficients
// ---------------------------------------------------------------------------

/// A normalized 3-cocycle `omega : G^3 -> U(1)`; the cocycle identity and
/// normalization are verified at construction.
#[derive(Clone, Debug)]
pub struct Cocycle3 {
    group: FiniteGroup,
    values: Vec<CycNum>,
}

impl Cocycle3 {
    pub fn new(group: FiniteGroup, values: Vec<CycNum>) -> Result<Self> {
        let n = group.order();
        if values.len() != n * n * n {
            return Err(Error::ShapeMismatch(format!(
                "cocycle table needs {} values, got {}",
                n * n * n,
                values.len()
            )));
        }
        let omega = Cocycle3 { group, values };
        omega.verify()?;
        Ok(omega)
    }

    fn verify(&self) -> Result<()> {
        let n = self.group.order();
        let e = self.group.identity();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if (a == e || b == e || c == e) && !self.get(a, b, c).is_one() {
                        return Err(Error::invariant(
                            "normalization",
                            format!("omega({a},{b},{c}) != 1"),
                        ));
                    }
                }
            }
        }
        // omega(b,c,d) omega(a,bc,d) omega(a,b,c) = omega(ab,c,d) omega(a,b,cd)
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        let lhs = self
                            .get(b, c, d)
                            .mul(self.get(a, self.group.mul(b, c), d))
                            .mul(self.get(a, b, c));
                        let rhs = self
                            .get(self.group.mul(a, b), c, d)
                            .mul(self.get(a, b, self.group.mul(c, d)));
                        if lhs != rhs {
                            return Err(Error::invariant(
                                "cocycle identity",
                                format!("fails at ({a},{b},{c},{d})"),
                            ));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn trivial(group: FiniteGroup) -> Self {
        let n = group.order();
        Cocycle3 { group, values: vec![CycNum::one(); n * n * n] }
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(CycNum::is_one)
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn get(&self, a: usize, b: usize, c: usize) -> &CycNum {
        let n = self.group.order();
        &self.values[(a * n + b) * n + c]
    }
}

/// The standard generator family of `H^3(Z/n, U(1))`:
/// `omega_s(a,b,c) = zeta_{n^2}^{s a (b + c - [b+c]_n)}`, verified against
/// the cocycle identity before returning.
pub fn cyclic_3cocycle(n: usize, s: i64) -> Result<Cocycle3> {
    assert!(n >= 1);
    let group = FiniteGroup::cyclic(n);
    let conductor = (n * n) as u64;
    let mut values = Vec::with_capacity(n * n * n);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let carry = (b + c - (b + c) % n) as i64; // 0 or n
                values.push(CycNum::root_of_unity(s * a as i64 * carry, conductor));
            }
        }
    }
    Cocycle3::new(group, values)
}

/// `gamma_{sigma,tau}(rho) = omega(sigma,tau,rho)
///   omega(sigma tau rho (sigma tau)^{-1}, sigma, tau)
///   / omega(sigma, tau rho tau^{-1}, tau)`.
pub fn gamma_coeff(omega: &Cocycle3, sigma: usize, tau: usize, rho: usize) -> Result<CycNum> {
    let g = omega.group();
    let st = g.mul(sigma, tau);
    let num = omega
        .get(sigma, tau, rho)
        .mul(omega.get(g.conj(st, rho), sigma, tau));
    num.div(omega.get(sigma, g.conj(tau, rho), tau))
}

/// `mu_sigma(tau,rho) = omega(sigma tau sigma^{-1}, sigma, rho)
///   / (omega(sigma tau sigma^{-1}, sigma rho sigma^{-1}, sigma)
///      omega(sigma, tau, rho))`.
pub fn mu_coeff(omega: &Cocycle3, sigma: usize, tau: usize, rho: usize) -> Result<CycNum> {
    let g = omega.group();
    let sts = g.conj(sigma, tau);
    let srs = g.conj(sigma, rho);
    omega
        .get(sts, sigma, rho)
        .div(&omega.get(sts, srs, sigma).mul(omega.get(sigma, tau, rho)))
}

/// A located failure of a twisted-action axiom.
#[derive(Clone, Debug, Serialize)]
pub struct TwistedActionFailure {
    pub sigma: usize,
    pub tau: usize,
    /// Basis index on V (gamma axiom) or pair index on V tensor V (mu check).
    pub basis: usize,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct TwistedActionReport {
    pub grading_ok: bool,
    pub gamma_failures: Vec<TwistedActionFailure>,
    pub mu_failures: Vec<TwistedActionFailure>,
    pub holds: bool,
}

/// Verifies the gamma-twisted action axiom
/// `(sigma tau) v_rho = gamma_{sigma,tau}(rho) sigma (tau v_rho)` on every
/// pair and basis vector, plus grading compatibility, plus the mu-twisted
/// tensor action `sigma (v_tau tensor w_rho) = mu_sigma(tau,rho)
/// (sigma v_tau) tensor (sigma w_rho)` satisfying the same axiom on
/// `V tensor V`.
pub fn check_twisted_action(v: &YdModule, omega: &Cocycle3) -> Result<TwistedActionReport> {
    if v.group() != omega.group() {
        return Err(Error::ParameterMismatch("module and cocycle over different groups".into()));
    }
    let g = v.group().clone();
    let n = g.order();
    let d = v.dim();
    let grading_ok = v.validate_grading().is_ok();

    let mut gamma_failures = Vec::new();
    for sigma in 0..n {
        for tau in 0..n {
            let composed = v.action(g.mul(sigma, tau));
            let stepwise = v.action(sigma).mul(v.action(tau))?;
            for k in 0..d {
                let gamma = gamma_coeff(omega, sigma, tau, v.grading()[k])?;
                let ok = (0..d).all(|r| {
                    *composed.get(r, k) == stepwise.get(r, k).mul(&gamma)
                });
                if !ok {
                    gamma_failures.push(TwistedActionFailure {
                        sigma,
                        tau,
                        basis: k,
                        detail: format!(
                            "(sigma tau) e_{k} != gamma * sigma(tau e_{k}), gamma = {gamma}"
                        ),
                    });
                }
            }
        }
    }

    // Tensor action on V tensor V, with degrees deg(e_k tensor e_l) =
    // grading[k] * grading[l].
    let tensor_action = |sigma: usize| -> Result<CycMatrix> {
        let a = v.action(sigma);
        let mut t = CycMatrix::zero(d * d, d * d);
        for k in 0..d {
            for l in 0..d {
                let mu = mu_coeff(omega, sigma, v.grading()[k], v.grading()[l])?;
                for r in 0..d {
                    let x = a.get(r, k);
                    if x.is_zero() {
                        continue;
                    }
                    for s in 0..d {
                        let y = a.get(s, l);
                        if !y.is_zero() {
                            t.set(r * d + s, k * d + l, x.mul(y).mul(&mu));
                        }
                    }
                }
            }
        }
        Ok(t)
    };
    let mut mu_failures = Vec::new();
    let tensor: Vec<CycMatrix> = (0..n).map(tensor_action).collect::<Result<_>>()?;
    for sigma in 0..n {
        for tau in 0..n {
            let composed = &tensor[g.mul(sigma, tau)];
            let stepwise = tensor[sigma].mul(&tensor[tau])?;
            for k in 0..d {
                for l in 0..d {
                    let deg = g.mul(v.grading()[k], v.grading()[l]);
                    let gamma = gamma_coeff(omega, sigma, tau, deg)?;
                    let col = k * d + l;
                    let ok = (0..d * d).all(|r| {
                        *composed.get(r, col) == stepwise.get(r, col).mul(&gamma)
                    });
                    if !ok {
                        mu_failures.push(TwistedActionFailure {
                            sigma,
                            tau,
                            basis: col,
                            detail: format!(
                                "tensor action axiom fails on e_{k} tensor e_{l}"
                            ),
                        });
                    }
                }
            }
        }
    }

    let holds = grading_ok && gamma_failures.is_empty() && mu_failures.is_empty();
    Ok(TwistedActionReport { grading_ok, gamma_failures, mu_failures, holds })
}
