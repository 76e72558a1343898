//! Exact matrix-group closure over cyclotomic matrices: full closure,
//! projective closure modulo scalars, and virtually-abelian certificates
//! for monomial generator sets.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::cyclo::{CycMatrix, CycNum};
use crate::{Error, Result};

/// Matrices larger than this need an explicit override to close over.
pub const DIM_GUARD: usize = 256;
/// Budgets above this need an explicit override.
pub const BUDGET_GUARD: u64 = 10_000_000;
/// Default element budget.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ClosureStatus {
    Finite,
    BudgetExceeded,
}

/// Outcome of a matrix-group closure run.
#[derive(Clone, Debug, Serialize)]
pub struct ClosureResult {
    pub status: ClosureStatus,
    /// Exact group order when finite.
    pub order: Option<u64>,
    pub generators_used: usize,
    /// Elements in discovery order (identity first); omitted on budget
    /// overrun.
    #[serde(skip)]
    pub elements: Option<Vec<CycMatrix>>,
    /// SHA-256 of each generator's canonical bytes, then of the sorted
    /// element set, for regression pinning.
    pub witness_hashes: Vec<String>,
}

fn sha_hex(bytes: &[u8]) -> String {
    let mut h = Sha256::new();
    h.update(bytes);
    let out = h.finalize();
    out.iter().map(|b| format!("{b:02x}")).collect()
}

fn guard(dim: usize, budget: u64, override_guard: bool) -> Result<()> {
    if budget == 0 {
        return Err(Error::invariant("budget", "budget must be positive"));
    }
    if !override_guard && (dim > DIM_GUARD || budget > BUDGET_GUARD) {
        return Err(Error::SizeGuard(format!(
            "closure over {dim}x{dim} matrices with budget {budget} exceeds the \
             guardrail ({DIM_GUARD}x{DIM_GUARD}, budget {BUDGET_GUARD}); pass the \
             override to proceed"
        )));
    }
    Ok(())
}

fn validate_generators(generators: &[CycMatrix]) -> Result<usize> {
    let first = generators
        .first()
        .ok_or_else(|| Error::ShapeMismatch("need at least one generator".into()))?;
    let dim = first.rows();
    for g in generators {
        if g.rows() != dim || g.cols() != dim {
            return Err(Error::ShapeMismatch(format!(
                "generators must all be {dim}x{dim}"
            )));
        }
        if !g.is_invertible() {
            return Err(Error::NotInvertible);
        }
    }
    Ok(dim)
}

/// Lift all matrices to one shared conductor so that equal group elements
/// have byte-identical canonical forms.
fn unify_all(generators: &[CycMatrix]) -> (Vec<CycMatrix>, u64) {
    let mut n = 1u64;
    for g in generators {
        n = num::integer::lcm(n, g.conductor());
    }
    (generators.iter().map(|g| g.lift(n)).collect(), n)
}

/// Set of discovered elements keyed on canonical bytes. Using the full
/// byte vector as the key means hash collisions are resolved by exact
/// comparison and can never merge distinct elements.
struct ElementSet {
    index: HashMap<Vec<u8>, usize>,
    elements: Vec<CycMatrix>,
}

impl ElementSet {
    fn new() -> Self {
        ElementSet { index: HashMap::new(), elements: Vec::new() }
    }

    fn contains(&self, m: &CycMatrix) -> bool {
        self.index.contains_key(&m.canonical_bytes())
    }

    /// Returns true if the element was new.
    fn insert(&mut self, m: CycMatrix) -> bool {
        let key = m.canonical_bytes();
        if self.index.contains_key(&key) {
            return false;
        }
        self.index.insert(key, self.elements.len());
        self.elements.push(m);
        true
    }

    fn len(&self) -> usize {
        self.elements.len()
    }
}

/// Dimino-style inductive closure: close over the first generator's cyclic
/// group, then for each further generator extend by whole cosets. The
/// `normalize` hook canonicalizes each product (identity for the full
/// group, scalar normalization for the projective quotient).
fn close<F>(
    generators: &[CycMatrix],
    budget: u64,
    normalize: F,
) -> Result<(ClosureStatus, ElementSet)>
where
    F: Fn(CycMatrix) -> Result<CycMatrix>,
{
    let dim = generators[0].rows();
    let conductor = generators[0].conductor();
    let gens: Vec<CycMatrix> = generators
        .iter()
        .map(|g| normalize(g.clone()))
        .collect::<Result<_>>()?;

    let mut set = ElementSet::new();
    let identity = normalize(CycMatrix::identity(dim).lift(conductor))?;
    set.insert(identity.clone());

    // cyclic closure of the first generator
    let mut cur = gens[0].clone();
    while !set.contains(&cur) {
        if set.len() as u64 >= budget {
            return Ok((ClosureStatus::BudgetExceeded, set));
        }
        set.insert(cur.clone());
        cur = normalize(cur.mul(&gens[0])?)?;
    }

    for i in 1..gens.len() {
        if set.contains(&gens[i]) {
            continue;
        }
        let subgroup: Vec<CycMatrix> = set.elements.clone();
        let sub_order = subgroup.len();
        let active = &gens[..=i];

        // append the coset (previous subgroup) * g_i
        let mut rep_pos = set.len();
        for h in &subgroup {
            if set.len() as u64 >= budget {
                return Ok((ClosureStatus::BudgetExceeded, set));
            }
            set.insert(normalize(h.mul(&gens[i])?)?);
        }
        // extend coset by coset
        while rep_pos < set.len() {
            let rep = set.elements[rep_pos].clone();
            for s in active {
                let elt = normalize(rep.mul(s)?)?;
                if !set.contains(&elt) {
                    for h in &subgroup {
                        if set.len() as u64 >= budget {
                            return Ok((ClosureStatus::BudgetExceeded, set));
                        }
                        set.insert(normalize(h.mul(&elt)?)?);
                    }
                }
            }
            rep_pos += sub_order;
        }
    }
    Ok((ClosureStatus::Finite, set))
}

fn finish<F>(
    status: ClosureStatus,
    set: ElementSet,
    gens: &[CycMatrix],
    normalize: F,
    seed: u64,
) -> Result<ClosureResult>
where
    F: Fn(CycMatrix) -> Result<CycMatrix>,
{
    let mut witness_hashes: Vec<String> =
        gens.iter().map(|g| sha_hex(&g.canonical_bytes())).collect();
    if status == ClosureStatus::BudgetExceeded {
        return Ok(ClosureResult {
            status,
            order: None,
            generators_used: gens.len(),
            elements: None,
            witness_hashes,
        });
    }

    // post-hoc spot verification of the group invariants
    let dim = gens[0].rows();
    let conductor = gens[0].conductor();
    let identity = normalize(CycMatrix::identity(dim).lift(conductor))?;
    if !set.contains(&identity) {
        return Err(Error::invariant("closure", "identity not in element set"));
    }
    for g in gens {
        let g = normalize(g.clone())?;
        if !set.contains(&normalize(g.inverse()?)?) {
            return Err(Error::invariant("closure", "generator inverse missing"));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..100 {
        let a = &set.elements[rng.gen_range(0..set.len())];
        let g = &gens[rng.gen_range(0..gens.len())];
        let prod = normalize(a.mul(&normalize(g.clone())?)?)?;
        if !set.contains(&prod) {
            return Err(Error::invariant("closure", "element set not closed"));
        }
    }

    // set-level witness hash: sorted element hashes hashed together
    let mut elem_keys: Vec<Vec<u8>> = set.index.keys().cloned().collect();
    elem_keys.sort();
    let mut h = Sha256::new();
    for k in &elem_keys {
        h.update(k);
    }
    witness_hashes.push(h.finalize().iter().map(|b| format!("{b:02x}")).collect());

    Ok(ClosureResult {
        status,
        order: Some(set.len() as u64),
        generators_used: gens.len(),
        elements: Some(set.elements),
        witness_hashes,
    })
}

/// Full matrix-group closure.
pub fn dimino_closure(generators: &[CycMatrix], budget: u64) -> Result<ClosureResult> {
    dimino_closure_with(generators, budget, false, 0)
}

pub fn dimino_closure_with(
    generators: &[CycMatrix],
    budget: u64,
    override_guard: bool,
    seed: u64,
) -> Result<ClosureResult> {
    let dim = validate_generators(generators)?;
    guard(dim, budget, override_guard)?;
    let (gens, conductor) = unify_all(generators);
    // arithmetic can land below the working conductor (e.g. rational
    // entries); lift back so canonical bytes stay comparable
    let norm = |m: CycMatrix| Ok(m.lift(conductor));
    let (status, set) = close(&gens, budget, norm)?;
    finish(status, set, &gens, norm, seed)
}

/// Scalar-normalized representative: divide by the first nonzero entry in
/// row-major order, making multiplication exact arithmetic in the
/// projective group.
pub fn projective_canonical(m: &CycMatrix) -> Result<CycMatrix> {
    let lead = (0..m.rows() * m.cols())
        .map(|i| m.get(i / m.cols(), i % m.cols()))
        .find(|e| !e.is_zero())
        .ok_or(Error::NotInvertible)?;
    let inv = lead.inverse()?;
    Ok(m.scale(&inv))
}

/// Closure of the images modulo scalar matrices.
pub fn closure_mod_scalars(generators: &[CycMatrix], budget: u64) -> Result<ClosureResult> {
    closure_mod_scalars_with(generators, budget, false, 0)
}

pub fn closure_mod_scalars_with(
    generators: &[CycMatrix],
    budget: u64,
    override_guard: bool,
    seed: u64,
) -> Result<ClosureResult> {
    let dim = validate_generators(generators)?;
    guard(dim, budget, override_guard)?;
    let (gens, conductor) = unify_all(generators);
    // keep the scalar quotient at the generators' conductor
    let norm = |m: CycMatrix| projective_canonical(&m).map(|c| c.lift(conductor));
    let (status, set) = close(&gens, budget, norm)?;
    finish(status, set, &gens, norm, seed)
}

// ---------------------------------------------------------------------------
// Virtually-abelian certificates
// ---------------------------------------------------------------------------

/// Witness that a generator set lies in the monomial group (permutation
/// matrices times diagonal phases), whose diagonal part is abelian.
#[derive(Clone, Debug, Serialize)]
pub struct VirtAbelianCert {
    /// Order of the permutation group generated by the permutation parts.
    pub perm_quotient_order: u64,
    /// Dimension of the diagonal torus containing the kernel of the
    /// permutation quotient.
    pub diagonal_rank_note: usize,
    /// Per-generator decomposition: `perm[c]` is the row of column `c`'s
    /// nonzero entry, `phases[c]` that entry.
    pub generator_monomial_witness: Vec<(Vec<usize>, Vec<CycNum>)>,
}

fn reassemble(dim: usize, perm: &[usize], phases: &[CycNum]) -> CycMatrix {
    let mut m = CycMatrix::zero(dim, dim);
    for c in 0..dim {
        m.set(perm[c], c, phases[c].clone());
    }
    m
}

/// Composition `(a after b)(c) = a[b[c]]`, matching matrix products of the
/// corresponding permutation matrices.
fn perm_compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&c| a[c]).collect()
}

fn perm_group_order(dim: usize, parts: &[Vec<usize>]) -> u64 {
    let mut seen: HashMap<Vec<usize>, ()> = HashMap::new();
    let id: Vec<usize> = (0..dim).collect();
    let mut frontier = vec![id.clone()];
    seen.insert(id, ());
    while let Some(p) = frontier.pop() {
        for g in parts {
            let q = perm_compose(g, &p);
            if !seen.contains_key(&q) {
                seen.insert(q.clone(), ());
                frontier.push(q);
            }
        }
    }
    seen.len() as u64
}

/// If every generator is monomial in the standard basis, certify that the
/// generated group is virtually abelian: return the decompositions and
/// the (cheap) permutation-group order. Otherwise `None`.
pub fn monomial_certificate(generators: &[CycMatrix]) -> Result<Option<VirtAbelianCert>> {
    let dim = validate_generators(generators)?;
    let mut witness = Vec::with_capacity(generators.len());
    for g in generators {
        match g.monomial_parts() {
            Some(parts) => witness.push(parts),
            None => return Ok(None),
        }
    }
    // reassembly must be exact
    for (g, (perm, phases)) in generators.iter().zip(&witness) {
        if reassemble(dim, perm, phases) != *g {
            return Err(Error::invariant(
                "monomial decomposition",
                "permutation and phase parts do not reassemble to the generator",
            ));
        }
    }
    // permutation parts compose homomorphically on all generator pairs
    for (a, (pa, _)) in generators.iter().zip(&witness) {
        for (b, (pb, _)) in generators.iter().zip(&witness) {
            let prod = a.mul(b)?;
            let (pprod, _) = prod.monomial_parts().ok_or_else(|| {
                Error::invariant("monomial product", "product of monomials not monomial")
            })?;
            if pprod != perm_compose(pa, pb) {
                return Err(Error::invariant(
                    "permutation quotient",
                    "permutation parts do not compose homomorphically",
                ));
            }
        }
    }
    let parts: Vec<Vec<usize>> = witness.iter().map(|(p, _)| p.clone()).collect();
    Ok(Some(VirtAbelianCert {
        perm_quotient_order: perm_group_order(dim, &parts),
        diagonal_rank_note: dim,
        generator_monomial_witness: witness,
    }))
}

// ---------------------------------------------------------------------------
// Braid relation gate
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize)]
pub struct BraidRelationReport {
    /// Indices `i` (1-based) where `g_i g_{i+1} g_i != g_{i+1} g_i g_{i+1}`.
    pub braid_failures: Vec<usize>,
    /// Pairs `(i, j)` with `|i - j| >= 2` where `g_i g_j != g_j g_i`.
    pub commute_failures: Vec<(usize, usize)>,
    pub holds: bool,
}

/// Sanity gate before closure: exact check of the braid relations on a
/// generator list indexed `1..n-1`.
pub fn braid_relation_check(generators: &[CycMatrix]) -> Result<BraidRelationReport> {
    validate_generators(generators)?;
    let k = generators.len();
    let mut braid_failures = Vec::new();
    for i in 0..k.saturating_sub(1) {
        let (a, b) = (&generators[i], &generators[i + 1]);
        let lhs = a.mul(b)?.mul(a)?;
        let rhs = b.mul(a)?.mul(b)?;
        if lhs != rhs {
            braid_failures.push(i + 1);
        }
    }
    let mut commute_failures = Vec::new();
    for i in 0..k {
        for j in i + 2..k {
            let (a, b) = (&generators[i], &generators[j]);
            if a.mul(b)? != b.mul(a)? {
                commute_failures.push((i + 1, j + 1));
            }
        }
    }
    let holds = braid_failures.is_empty() && commute_failures.is_empty();
    Ok(BraidRelationReport { braid_failures, commute_failures, holds })
}

// ---------------------------------------------------------------------------
// Fixture: a two-generator family on three strands
// ---------------------------------------------------------------------------

/// The 3x3 pair, at `x = zeta_k`:
/// `g_1 = [[0,x,0],[x,0,0],[0,0,x^-2]]`,
/// `g_2 = [[x^-2,0,0],[0,0,x^2],[0,1,0]]`.
/// They satisfy the braid relation for every invertible `x`, and the
/// projective image grows with the order of `x`.
pub fn discussion_generators(k: u64) -> [CycMatrix; 2] {
    let x = CycNum::root_of_unity(1, k);
    let x2_inv = CycNum::root_of_unity(-2, k);
    let x2 = CycNum::root_of_unity(2, k);
    let mut g1 = CycMatrix::zero(3, 3);
    g1.set(0, 1, x.clone());
    g1.set(1, 0, x);
    g1.set(2, 2, x2_inv.clone());
    let mut g2 = CycMatrix::zero(3, 3);
    g2.set(0, 0, x2_inv);
    g2.set(1, 2, x2);
    g2.set(2, 1, CycNum::one());
    [g1, g2]
}
