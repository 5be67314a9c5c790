//! Order doubling and the classification of subgyrogroups and normal
//! subgyrogroups of a doubled gyrogroup.
//!
//! Doubling glues two copies of a base gyrogroup H into one structure G
//! of twice the order: a plus copy on indices [0, n) and a minus copy on
//! [n, 2n), paired off by a bijection phi. Products with equal signs land
//! in the plus copy, mixed signs in the minus copy, and every gyration of
//! G acts as a base gyration on the plus copy and its phi-conjugate on
//! the minus copy. `double` re-derives and checks all of this rather than
//! trusting it.
//!
//! Every subgyrogroup of G then falls into at least one of three shapes
//! (`Clause`): contained in the plus copy, a mix N+ ∪ L- whose minus part
//! multiplies into the plus part, or a mirror pair N+ ∪ phi(N+). The
//! classify functions report every shape that holds, and
//! `generate_normal_candidates` runs the construction in reverse.

use crate::gyrogroup::{CoreError, FiniteGyrogroup, ValidationReport};
use crate::subalgebra::{
    self, enumerate_normals, enumerate_normals_generated, normality_witness, SubalgebraError,
    FULL_ENUMERATION_MAX,
};
use crate::subset::ElementSubset;
use crate::CayleyTable;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Error, Debug)]
pub enum DoublingError {
    #[error("phi is not a bijection from the base onto the minus indices")]
    PhiNotBijective,
    #[error("doubled table fails the gyrogroup axioms: {0}")]
    ConstructionAxiomFailure(Box<ValidationReport>),
    #[error("gyration at ({a},{b}) does not follow the doubling rule")]
    GyrationRuleViolation { a: usize, b: usize },
    #[error("{0} is not a subgyrogroup of the double")]
    NotASubgyrogroup(ElementSubset),
    #[error("{0} is not normal in the double")]
    NotNormal(ElementSubset),
    #[error("{subject} satisfies no classification clause")]
    NoClauseApplies { subject: ElementSubset },
    #[error(transparent)]
    Subalgebra(#[from] SubalgebraError),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sign {
    Plus,
    Minus,
}

/// A doubled gyrogroup together with the base and pairing it was built
/// from. The plus copy is always [0, n); phi sends plus index k to its
/// minus partner in [n, 2n).
#[derive(Clone, Debug)]
pub struct DoubledGyrogroup {
    base: FiniteGyrogroup,
    phi: Vec<usize>,
    phi_inv: Vec<usize>, // phi_inv[m - n] = k with phi[k] = m
    whole: FiniteGyrogroup,
    sign: Vec<Sign>,
}

impl DoubledGyrogroup {
    pub fn base(&self) -> &FiniteGyrogroup {
        &self.base
    }

    pub fn whole(&self) -> &FiniteGyrogroup {
        &self.whole
    }

    pub fn plus_order(&self) -> usize {
        self.base.order()
    }

    pub fn phi(&self) -> &[usize] {
        &self.phi
    }

    pub fn sign(&self, x: usize) -> Sign {
        self.sign[x]
    }

    /// The base element a doubled index stands for.
    pub fn plus_part_of(&self, x: usize) -> usize {
        let n = self.plus_order();
        if x < n {
            x
        } else {
            self.phi_inv[x - n]
        }
    }

    /// The plus copy as a subset of the double.
    pub fn plus_copy(&self) -> ElementSubset {
        ElementSubset::from_elements(2 * self.plus_order(), 0..self.plus_order())
    }

    /// A base subset reinterpreted as plus elements of the double.
    pub fn embed_plus(&self, s: &ElementSubset) -> ElementSubset {
        debug_assert_eq!(s.universe(), self.plus_order());
        s.with_universe(2 * self.plus_order())
    }

    /// phi applied elementwise: the minus partners of a base subset.
    pub fn phi_image_set(&self, s: &ElementSubset) -> ElementSubset {
        debug_assert_eq!(s.universe(), self.plus_order());
        ElementSubset::from_elements(2 * self.plus_order(), s.iter().map(|k| self.phi[k]))
    }
}

/// Builds the double of a validated gyrogroup. The default pairing is
/// phi(k) = k + n; any bijection onto [n, 2n) is accepted. The doubled
/// table is re-validated from scratch and its derived gyrations are
/// compared against the doubling rule, so a success certifies both.
pub fn double(
    base: &FiniteGyrogroup,
    phi: Option<Vec<usize>>,
) -> Result<DoubledGyrogroup, DoublingError> {
    let n = base.order();
    let phi = match phi {
        None => (n..2 * n).collect::<Vec<_>>(),
        Some(p) => {
            let mut seen = vec![false; n];
            if p.len() != n {
                return Err(DoublingError::PhiNotBijective);
            }
            for &m in &p {
                if m < n || m >= 2 * n || seen[m - n] {
                    return Err(DoublingError::PhiNotBijective);
                }
                seen[m - n] = true;
            }
            p
        }
    };
    let mut phi_inv = vec![0usize; n];
    for (k, &m) in phi.iter().enumerate() {
        phi_inv[m - n] = k;
    }

    let t = base.table();
    let part = |x: usize| if x < n { x } else { phi_inv[x - n] };
    let mut rows = Vec::with_capacity(2 * n);
    for x in 0..2 * n {
        let mut row = Vec::with_capacity(2 * n);
        for y in 0..2 * n {
            let s = t.get(part(x), part(y));
            row.push(if (x < n) == (y < n) { s } else { phi[s] });
        }
        rows.push(row);
    }
    let table = CayleyTable::from_rows(rows).expect("doubled entries are below twice the order");
    let whole = match FiniteGyrogroup::construct(table, None) {
        Ok(g) => g,
        Err(CoreError::InvalidGyrogroup(report)) => {
            return Err(DoublingError::ConstructionAxiomFailure(report))
        }
        Err(other) => unreachable!("doubled table is well-shaped: {other}"),
    };

    for x in 0..2 * n {
        for y in 0..2 * n {
            let expected = base.gyration(part(x), part(y)).expect("in range");
            let actual = whole.gyration(x, y).expect("in range");
            let follows_rule = (0..2 * n).all(|c| {
                let image = if c < n {
                    expected.apply(c)
                } else {
                    phi[expected.apply(phi_inv[c - n])]
                };
                actual.apply(c) == image
            });
            if !follows_rule {
                return Err(DoublingError::GyrationRuleViolation { a: x, b: y });
            }
        }
    }

    let sign = (0..2 * n)
        .map(|x| if x < n { Sign::Plus } else { Sign::Minus })
        .collect();
    Ok(DoubledGyrogroup {
        base: base.clone(),
        phi,
        phi_inv,
        whole,
        sign,
    })
}

/// Splits a subset of the double into its plus part (as a base subset),
/// its minus part (as a subset of the double), and the minus part pulled
/// back through phi.
pub fn split(
    d: &DoubledGyrogroup,
    s: &ElementSubset,
) -> (ElementSubset, ElementSubset, ElementSubset) {
    let n = d.plus_order();
    assert_eq!(s.universe(), 2 * n, "subset universe must match the double");
    let mut plus = ElementSubset::empty(n);
    let mut minus = ElementSubset::empty(2 * n);
    let mut pulled = ElementSubset::empty(n);
    for x in s.iter() {
        if x < n {
            plus.insert(x);
        } else {
            minus.insert(x);
            pulled.insert(d.phi_inv[x - n]);
        }
    }
    (plus, minus, pulled)
}

/// Shape of a subgyrogroup of a double. Display labels differ between
/// the subgyrogroup clauses (a, b, c) and the normal clauses (1, 2, 3);
/// the shapes are the same.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Clause {
    /// Contained in the plus copy.
    InsidePlus,
    /// Plus part joined with minus elements whose pairwise products fall
    /// back into the plus part.
    Mixed,
    /// A base subset joined with its exact phi image.
    Mirror,
}

impl Clause {
    pub fn subgyrogroup_label(self) -> &'static str {
        match self {
            Clause::InsidePlus => "a",
            Clause::Mixed => "b",
            Clause::Mirror => "c",
        }
    }

    pub fn normal_label(self) -> &'static str {
        match self {
            Clause::InsidePlus => "1",
            Clause::Mixed => "2",
            Clause::Mirror => "3",
        }
    }
}

/// Which clauses a subgyrogroup of the double satisfies, with the parts
/// that witness them. `plus_part` ∪ `minus_part` (the latter embedded)
/// always reassembles the classified set; `pulled_back` is the minus
/// part seen through phi.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SubClassification {
    pub clauses: Vec<Clause>,
    pub plus_part: ElementSubset,
    pub minus_part: ElementSubset,
    pub pulled_back: ElementSubset,
}

/// Same shape as `SubClassification` for normal subgyrogroups.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct NormalClassification {
    pub clauses: Vec<Clause>,
    pub plus_part: ElementSubset,
    pub minus_part: ElementSubset,
    pub pulled_back: ElementSubset,
}

fn is_sub_of(g: &FiniteGyrogroup, h: &ElementSubset) -> bool {
    !h.is_empty() && subalgebra::is_subgyrogroup(g, h).expect("nonempty matching subset")
}

fn is_normal_in(g: &FiniteGyrogroup, h: &ElementSubset) -> bool {
    is_sub_of(g, h) && normality_witness(g, h).is_none()
}

/// True iff every product of two minus elements lands in `target`
/// (read as plus elements of the base).
fn minus_pair_products_land_in(
    d: &DoubledGyrogroup,
    minus: &ElementSubset,
    target: &ElementSubset,
) -> bool {
    let t = d.whole.table();
    minus
        .iter()
        .all(|x| minus.iter().all(|y| target.contains(t.get(x, y))))
}

fn clause_set(
    d: &DoubledGyrogroup,
    set: &ElementSubset,
    part_ok: impl Fn(&ElementSubset) -> bool,
) -> (Vec<Clause>, ElementSubset, ElementSubset, ElementSubset) {
    let (plus, minus, pulled) = split(d, set);
    let mut clauses = Vec::new();
    if minus.is_empty() && part_ok(&plus) {
        clauses.push(Clause::InsidePlus);
    }
    if part_ok(&plus)
        && minus_pair_products_land_in(d, &minus, &plus)
        && plus.is_disjoint(&pulled)
        && part_ok(&plus.union(&pulled))
    {
        clauses.push(Clause::Mixed);
    }
    if d.phi_image_set(&plus) == minus && part_ok(&plus) {
        clauses.push(Clause::Mirror);
    }
    (clauses, plus, minus, pulled)
}

/// Reports every clause a subgyrogroup of the double satisfies. An empty
/// clause set is an error: the classification is exhaustive.
pub fn classify_subgyrogroup(
    d: &DoubledGyrogroup,
    b: &ElementSubset,
) -> Result<SubClassification, DoublingError> {
    if !subalgebra::is_subgyrogroup(d.whole(), b)? {
        return Err(DoublingError::NotASubgyrogroup(b.clone()));
    }
    let (clauses, plus_part, minus_part, pulled_back) =
        clause_set(d, b, |part| is_sub_of(d.base(), part));
    if clauses.is_empty() {
        return Err(DoublingError::NoClauseApplies { subject: b.clone() });
    }
    Ok(SubClassification {
        clauses,
        plus_part,
        minus_part,
        pulled_back,
    })
}

/// Reports every clause a normal subgyrogroup of the double satisfies,
/// with normality of the base parts required instead of mere closure.
pub fn classify_normal(
    d: &DoubledGyrogroup,
    m: &ElementSubset,
) -> Result<NormalClassification, DoublingError> {
    if !subalgebra::is_normal(d.whole(), m)? {
        return Err(DoublingError::NotNormal(m.clone()));
    }
    let (clauses, plus_part, minus_part, pulled_back) =
        clause_set(d, m, |part| is_normal_in(d.base(), part));
    if clauses.is_empty() {
        return Err(DoublingError::NoClauseApplies { subject: m.clone() });
    }
    Ok(NormalClassification {
        clauses,
        plus_part,
        minus_part,
        pulled_back,
    })
}

fn base_normals(d: &DoubledGyrogroup) -> Vec<ElementSubset> {
    if d.plus_order() <= FULL_ENUMERATION_MAX {
        enumerate_normals(d.base()).expect("order fits full enumeration")
    } else {
        enumerate_normals_generated(d.base(), 3)
            .expect("generated enumeration has no order limit")
            .sets
    }
}

/// Emits every subset of the double that the three clauses construct
/// from normal subgyrogroups of the base: each base normal as plus
/// elements; each pair of nested base normals N ⊆ K whose difference
/// multiplies into N, as N ∪ phi(K ∖ N); and each mirror N ∪ phi(N).
/// Deduplicated, sorted by (size, elements).
pub fn generate_normal_candidates(d: &DoubledGyrogroup) -> Vec<ElementSubset> {
    let normals = base_normals(d);
    let t = d.base().table();
    let mut out = std::collections::BTreeSet::new();
    for n_plus in &normals {
        let embedded = d.embed_plus(n_plus);
        out.insert(embedded.clone());
        out.insert(embedded.union(&d.phi_image_set(n_plus)));
        for k in &normals {
            if !n_plus.is_subset(k) {
                continue;
            }
            let l_plus = k.difference(n_plus);
            if l_plus.is_empty() {
                continue;
            }
            let products_land = l_plus
                .iter()
                .all(|x| l_plus.iter().all(|y| n_plus.contains(t.get(x, y))));
            if products_land {
                out.insert(embedded.union(&d.phi_image_set(&l_plus)));
            }
        }
    }
    out.into_iter().collect()
}

/// One assertion checked by `check_corollary`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CorollaryEntry {
    pub subject: ElementSubset,
    pub description: String,
    pub passed: bool,
    /// Pair at which the triple coset equality failed, if it did.
    pub witness: Option<(usize, usize)>,
}

/// Outcome of the two corollary assertions: the plus copy is normal in
/// the double, and every embedded base normal stays normal.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CorollaryReport {
    pub entries: Vec<CorollaryEntry>,
}

impl CorollaryReport {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.passed)
    }
}

/// Checks that the plus copy is normal in the double and that every
/// normal subgyrogroup of the base, embedded as plus elements, is
/// normal in the double. Failures become report entries, not errors.
pub fn check_corollary(d: &DoubledGyrogroup) -> CorollaryReport {
    let mut entries = Vec::new();
    let mut check = |subject: ElementSubset, description: String| {
        let witness = if is_sub_of(d.whole(), &subject) {
            normality_witness(d.whole(), &subject)
        } else {
            Some((0, 0))
        };
        entries.push(CorollaryEntry {
            passed: witness.is_none(),
            subject,
            description,
            witness,
        });
    };
    check(
        d.plus_copy(),
        "plus copy is normal in the double".to_string(),
    );
    for n_plus in base_normals(d) {
        let subject = d.embed_plus(&n_plus);
        check(
            subject,
            format!("embedded base normal {n_plus} is normal in the double"),
        );
    }
    CorollaryReport { entries }
}
