//! Braided vector spaces, Yang-Baxter / unitarity checkers, and the induced
//! braid group representation on `V^{tensor n}`.

use serde::{Deserialize, Serialize};

use crate::cyclo::{CycMatrix, CycNum};
use crate::{Error, Result};

/// Default ceiling on `dim^n` for tensor-power constructions; exact
/// arithmetic beyond this is refused unless the caller overrides.
pub const SIZE_GUARD: u64 = 4096;

pub(crate) fn check_size_guard(dim: usize, n: usize, override_guard: bool) -> Result<u64> {
    let mut total: u64 = 1;
    for _ in 0..n {
        total = total
            .checked_mul(dim as u64)
            .ok_or_else(|| Error::SizeGuard(format!("{dim}^{n} overflows")))?;
    }
    if total > SIZE_GUARD && !override_guard {
        return Err(Error::SizeGuard(format!(
            "{dim}^{n} = {total} exceeds the default limit of {SIZE_GUARD}"
        )));
    }
    Ok(total)
}

/// A braided vector space: a dimension `d` and an invertible operator `c`
/// on `V tensor V`, i.e. a `d^2 x d^2` matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bvs {
    dim: usize,
    c: CycMatrix,
    c_inv: CycMatrix,
    unitary: bool,
}

/// Outcome of an exact Yang-Baxter check on `V^{tensor 3}`.
#[derive(Clone, Debug, Serialize)]
pub struct YbeReport {
    pub holds: bool,
    /// Row/column of the first entry where the two sides differ.
    pub first_discrepancy: Option<(usize, usize)>,
}

impl Bvs {
    /// Builds a BVS, checking invertibility of `c` by exact elimination.
    /// Does not require the Yang-Baxter equation; see [`Bvs::check_ybe`].
    pub fn new(dim: usize, c: CycMatrix) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ShapeMismatch("dimension must be positive".into()));
        }
        let d2 = dim * dim;
        if c.rows() != d2 || c.cols() != d2 {
            return Err(Error::ShapeMismatch(format!(
                "braiding for dim {} must be {}x{}, got {}x{}",
                dim,
                d2,
                d2,
                c.rows(),
                c.cols()
            )));
        }
        let c_inv = c.inverse()?;
        let unitary = c.mul(&c.adjoint())?.is_identity();
        Ok(Bvs { dim, c, c_inv, unitary })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn braiding(&self) -> &CycMatrix {
        &self.c
    }

    pub fn braiding_inverse(&self) -> &CycMatrix {
        &self.c_inv
    }

    /// True iff `c . adjoint(c) = I` exactly.
    pub fn check_unitary(&self) -> bool {
        self.unitary
    }

    /// Evaluates both sides of the Yang-Baxter equation on `V^{tensor 3}`
    /// and compares entrywise.
    pub fn check_ybe(&self) -> Result<YbeReport> {
        let id = CycMatrix::identity(self.dim);
        let c12 = self.c.kron(&id);
        let c23 = id.kron(&self.c);
        let lhs = c12.mul(&c23)?.mul(&c12)?;
        let rhs = c23.mul(&c12)?.mul(&c23)?;
        let n = lhs.rows();
        for i in 0..n {
            for j in 0..n {
                if lhs.get(i, j) != rhs.get(i, j) {
                    return Ok(YbeReport { holds: false, first_discrepancy: Some((i, j)) });
                }
            }
        }
        Ok(YbeReport { holds: true, first_discrepancy: None })
    }

    /// `I^{tensor (i-1)} kron c kron I^{tensor (n-i-1)}` on `V^{tensor n}`,
    /// for `1 <= i <= n-1`.
    pub fn braid_generator(&self, n: usize, i: usize, override_guard: bool) -> Result<CycMatrix> {
        if i < 1 || i > n.saturating_sub(1) {
            return Err(Error::IndexOutOfRange(format!(
                "generator index {i} for {n} strands"
            )));
        }
        check_size_guard(self.dim, n, override_guard)?;
        Ok(tensor_leg(&self.c, self.dim, n, i))
    }

    fn braid_generator_inverse(&self, n: usize, i: usize) -> CycMatrix {
        tensor_leg(&self.c_inv, self.dim, n, i)
    }

    /// Ordered product of generator images and exact inverses; the empty
    /// word maps to the identity.
    pub fn eval_braid_word(&self, w: &BraidWord, override_guard: bool) -> Result<CycMatrix> {
        let n = w.strands();
        let total = check_size_guard(self.dim, n, override_guard)?;
        let mut acc = CycMatrix::identity(total as usize);
        for &letter in w.letters() {
            let i = letter.unsigned_abs() as usize;
            let g = if letter > 0 {
                self.braid_generator(n, i, override_guard)?
            } else {
                self.braid_generator_inverse(n, i)
            };
            acc = acc.mul(&g)?;
        }
        Ok(acc)
    }

    /// Images of all generators `sigma_1 .. sigma_{n-1}` on `V^{tensor n}`.
    pub fn braid_generators(&self, n: usize, override_guard: bool) -> Result<Vec<CycMatrix>> {
        (1..n).map(|i| self.braid_generator(n, i, override_guard)).collect()
    }
}

/// The operator acting as `op` on legs `i, i+1` of a `d`-dimensional
/// `n`-fold tensor power. Leftmost factor is most significant.
fn tensor_leg(op: &CycMatrix, d: usize, n: usize, i: usize) -> CycMatrix {
    let left = d.pow((i - 1) as u32);
    let right = d.pow((n - i - 1) as u32);
    let mut out = op.clone();
    if left > 1 {
        out = CycMatrix::identity(left).kron(&out);
    }
    if right > 1 {
        out = out.kron(&CycMatrix::identity(right));
    }
    out
}

/// Outcome of a bounded order computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum OperatorOrder {
    Order(u64),
    Exceeded,
}

/// Least `k <= budget` with `A^k = I`, or `Exceeded`.
pub fn operator_order(a: &CycMatrix, budget: u64) -> Result<OperatorOrder> {
    if !a.is_square() {
        return Err(Error::ShapeMismatch("operator_order of a non-square matrix".into()));
    }
    if !a.is_invertible() {
        return Err(Error::NotInvertible);
    }
    let mut p = a.clone();
    for k in 1..=budget {
        if p.is_identity() {
            return Ok(OperatorOrder::Order(k));
        }
        if k < budget {
            p = p.mul(a)?;
        }
    }
    Ok(OperatorOrder::Exceeded)
}

/// A word in the braid group `B_n`: signed generator indices, `+i` for
/// `sigma_i`, `-i` for its inverse.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self> {
        for &l in &letters {
            let i = l.unsigned_abs() as usize;
            if l == 0 || i >= strands {
                return Err(Error::IndexOutOfRange(format!(
                    "letter {l} out of range for {strands} strands"
                )));
            }
        }
        Ok(BraidWord { strands, letters })
    }

    /// Parses whitespace-separated tokens, each `sK`, `sK^-1`, or a signed
    /// integer. Strand count is inferred as `1 + max index`.
    pub fn parse(text: &str) -> Result<Self> {
        Self::parse_with_strands(text, None)
    }

    pub fn parse_with_strands(text: &str, strands: Option<usize>) -> Result<Self> {
        let mut letters = Vec::new();
        let mut pos = 0usize;
        for raw in text.split_whitespace() {
            // byte offset of this token for error reporting
            pos = text[pos..].find(raw).map(|o| o + pos).unwrap_or(pos);
            let letter = parse_token(raw, pos)?;
            letters.push(letter);
            pos += raw.len();
        }
        let max_index = letters.iter().map(|l| l.unsigned_abs() as usize).max().unwrap_or(0);
        let strands = match strands {
            Some(n) => {
                if max_index >= n {
                    return Err(Error::IndexOutOfRange(format!(
                        "word uses generator {max_index} but only {n} strands given"
                    )));
                }
                n
            }
            None => max_index + 1,
        };
        BraidWord::new(strands.max(1), letters)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn concat(&self, other: &BraidWord) -> Result<BraidWord> {
        let strands = self.strands.max(other.strands);
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        BraidWord::new(strands, letters)
    }
}

fn parse_token(tok: &str, pos: usize) -> Result<i32> {
    let (body, sign) = if let Some(rest) = tok.strip_prefix('s').or_else(|| tok.strip_prefix('S')) {
        if let Some(idx) = rest.strip_suffix("^-1") {
            (idx, -1)
        } else {
            (rest, 1)
        }
    } else {
        (tok, 1)
    };
    let value: i64 = body.parse().map_err(|_| Error::Parse {
        pos,
        msg: format!("expected `sK`, `sK^-1` or a signed integer, got `{tok}`"),
    })?;
    let value = value * sign;
    if value == 0 {
        return Err(Error::IndexOutOfRange(
            "braid generators are numbered from 1".into(),
        ));
    }
    i32::try_from(value).map_err(|_| Error::Parse {
        pos,
        msg: format!("generator index `{tok}` too large"),
    })
}

/// The flip braiding `c(x tensor y) = y tensor x` on dimension `d`.
pub fn flip_bvs(d: usize) -> Bvs {
    let c = CycMatrix::from_fn(d * d, d * d, |row, col| {
        let (x, y) = (col / d, col % d);
        if row == y * d + x {
            CycNum::one()
        } else {
            CycNum::zero()
        }
    });
    Bvs::new(d, c).expect("flip map is invertible")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flip_satisfies_ybe() {
        let b = flip_bvs(3);
        assert!(b.check_ybe().unwrap().holds);
        assert!(b.check_unitary());
    }

    #[test]
    fn corrupted_flip_fails_ybe_with_location() {
        // flip on d=2 with the nonzero of one column moved to the wrong row
        // and phased by a cube root of unity
        let d = 2;
        let mut c = CycMatrix::from_fn(d * d, d * d, |row, col| {
            let (x, y) = (col / d, col % d);
            if row == y * d + x {
                CycNum::one()
            } else {
                CycNum::zero()
            }
        });
        c.set(2, 1, CycNum::zero());
        c.set(3, 3, CycNum::zero());
        c.set(3, 1, CycNum::root_of_unity(1, 3));
        c.set(2, 3, CycNum::one());
        let b = Bvs::new(d, c).unwrap();
        let report = b.check_ybe().unwrap();
        assert!(!report.holds);
        assert!(report.first_discrepancy.is_some());
    }

    #[test]
    fn scaled_flip_not_unitary() {
        let flip = flip_bvs(2);
        let c = flip.braiding().scale(&CycNum::from_int(2));
        let b = Bvs::new(2, c).unwrap();
        assert!(!b.check_unitary());
    }

    #[test]
    fn generator_on_two_strands_is_c() {
        let b = flip_bvs(2);
        assert_eq!(b.braid_generator(2, 1, false).unwrap(), *b.braiding());
    }

    #[test]
    fn generator_index_out_of_range() {
        let b = flip_bvs(2);
        assert!(b.braid_generator(3, 3, false).is_err());
        assert!(b.braid_generator(3, 0, false).is_err());
    }

    #[test]
    fn distant_generators_commute() {
        let b = flip_bvs(2);
        let g1 = b.braid_generator(4, 1, false).unwrap();
        let g3 = b.braid_generator(4, 3, false).unwrap();
        assert_eq!(g1.mul(&g3).unwrap(), g3.mul(&g1).unwrap());
    }

    #[test]
    fn operator_order_basics() {
        assert_eq!(
            operator_order(&CycMatrix::identity(3), 10).unwrap(),
            OperatorOrder::Order(1)
        );
        let d = CycMatrix::diagonal(&[CycNum::root_of_unity(1, 6), CycNum::one()]);
        assert_eq!(operator_order(&d, 10).unwrap(), OperatorOrder::Order(6));
        assert_eq!(operator_order(&d, 3).unwrap(), OperatorOrder::Exceeded);
        let two = CycMatrix::diagonal(&[CycNum::from_int(2)]);
        assert_eq!(operator_order(&two, 5).unwrap(), OperatorOrder::Exceeded);
    }

    #[test]
    fn parse_both_grammars() {
        let w1 = BraidWord::parse("s1 s2^-1 s1").unwrap();
        assert_eq!(w1.letters(), &[1, -2, 1]);
        assert_eq!(w1.strands(), 3);
        let w2 = BraidWord::parse("1 -2 1").unwrap();
        assert_eq!(w1, w2);
    }

    #[test]
    fn parse_rejects_zero_index() {
        assert!(matches!(
            BraidWord::parse("s0"),
            Err(Error::IndexOutOfRange(_))
        ));
        assert!(matches!(BraidWord::parse("0"), Err(Error::IndexOutOfRange(_))));
    }

    #[test]
    fn parse_error_carries_position() {
        match BraidWord::parse("s1 blah") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 3),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn empty_word_is_identity() {
        let b = flip_bvs(2);
        let w = BraidWord::parse("").unwrap();
        assert!(b.eval_braid_word(&w, false).unwrap().is_identity());
    }

    #[test]
    fn word_with_cancelling_letters_is_identity() {
        let b = flip_bvs(2);
        let w = BraidWord::parse("1 -1").unwrap();
        assert!(b.eval_braid_word(&w, false).unwrap().is_identity());
    }

    #[test]
    fn size_guard_refuses_large_tensor_powers() {
        let b = flip_bvs(4);
        // 4^7 = 16384 > 4096
        assert!(matches!(
            b.braid_generator(7, 1, false),
            Err(Error::SizeGuard(_))
        ));
    }
}
