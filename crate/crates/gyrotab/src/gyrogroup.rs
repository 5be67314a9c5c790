//! Cayley tables, axiom verification, and validated finite gyrogroups.
//!
//! A gyrogroup is a groupoid with a left identity and left inverses whose
//! non-associativity is governed by automorphisms: for all a, b, c
//! a + (b + c) = (a + b) + gyr[a,b](c), with gyr[a,b] = gyr[a+b, b].
//! Every gyration is recovered from the table alone as
//! gyr[a,b](c) = -(a+b) + (a + (b+c)); stored gyration tables are treated
//! as expected output to compare against, never as input.

use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt;
use thiserror::Error;

/// n-by-n operation table; entries are element indices in `0..n`.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CayleyTable {
    order: usize,
    entries: Vec<usize>, // row-major
}

impl CayleyTable {
    /// Builds a table from rows, enforcing shape and entry range.
    pub fn from_rows(rows: Vec<Vec<usize>>) -> Result<Self, CoreError> {
        let order = rows.len();
        if order == 0 {
            return Err(CoreError::BadShape { rows: 0 });
        }
        let mut entries = Vec::with_capacity(order * order);
        for (row, r) in rows.iter().enumerate() {
            if r.len() != order {
                return Err(CoreError::BadRowLength {
                    row,
                    got: r.len(),
                    expected: order,
                });
            }
            for (col, &value) in r.iter().enumerate() {
                if value >= order {
                    return Err(CoreError::OutOfRangeEntry {
                        row,
                        col,
                        value,
                        order,
                    });
                }
                entries.push(value);
            }
        }
        Ok(CayleyTable { order, entries })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, a: usize, b: usize) -> usize {
        debug_assert!(a < self.order && b < self.order);
        self.entries[a * self.order + b]
    }

    pub fn row(&self, a: usize) -> &[usize] {
        &self.entries[a * self.order..(a + 1) * self.order]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[usize]> {
        self.entries.chunks(self.order)
    }
}

impl fmt::Debug for CayleyTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CayleyTable(order {})", self.order)?;
        for r in self.rows() {
            writeln!(f, "  {r:?}")?;
        }
        Ok(())
    }
}

/// Bijection on `0..n`, stored as its image array.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    /// Validates that `images` is a bijection on `0..images.len()`.
    pub fn from_images(images: Vec<usize>) -> Result<Self, CoreError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(CoreError::NotBijective);
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }
}

/// One axiom violation with its lexicographically minimal witness.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    NoLeftIdentity,
    DuplicateLeftIdentity {
        first: usize,
        second: usize,
    },
    MissingLeftInverse {
        element: usize,
    },
    DuplicateLeftInverse {
        element: usize,
        first: usize,
        second: usize,
    },
    GyrNotBijective {
        a: usize,
        b: usize,
    },
    GyrNotAutomorphism {
        a: usize,
        b: usize,
        x: usize,
        y: usize,
    },
    GyroassociativityFails {
        a: usize,
        b: usize,
        c: usize,
    },
    LeftLoopFails {
        a: usize,
        b: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NoLeftIdentity => write!(f, "no left identity"),
            Violation::DuplicateLeftIdentity { first, second } => {
                write!(f, "left identity is not unique: {first} and {second}")
            }
            Violation::MissingLeftInverse { element } => {
                write!(f, "element {element} has no left inverse")
            }
            Violation::DuplicateLeftInverse {
                element,
                first,
                second,
            } => {
                write!(
                    f,
                    "element {element} has left inverses {first} and {second}"
                )
            }
            Violation::GyrNotBijective { a, b } => {
                write!(f, "gyration at ({a},{b}) is not a bijection")
            }
            Violation::GyrNotAutomorphism { a, b, x, y } => {
                write!(f, "gyration at ({a},{b}) breaks the operation on ({x},{y})")
            }
            Violation::GyroassociativityFails { a, b, c } => {
                write!(f, "gyroassociativity fails at ({a},{b},{c})")
            }
            Violation::LeftLoopFails { a, b } => {
                write!(f, "left loop property fails at ({a},{b})")
            }
        }
    }
}

/// Outcome of `verify_axioms`: at most one violation per axiom family,
/// each with the smallest witness in lexicographic order.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    fn from_violations(violations: Vec<Violation>) -> Self {
        ValidationReport {
            valid: violations.is_empty(),
            violations,
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.valid {
            return write!(f, "all gyrogroup axioms hold");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

#[derive(Error, Debug)]
pub enum CoreError {
    #[error("table has no rows")]
    BadShape { rows: usize },
    #[error("table row {row} has {got} entries, expected {expected}")]
    BadRowLength {
        row: usize,
        got: usize,
        expected: usize,
    },
    #[error("table entry ({row},{col}) = {value} is out of range for order {order}")]
    OutOfRangeEntry {
        row: usize,
        col: usize,
        value: usize,
        order: usize,
    },
    #[error("not a gyrogroup: {0}")]
    InvalidGyrogroup(Box<ValidationReport>),
    #[error("element index {index} out of range for order {order}")]
    IndexOutOfRange { index: usize, order: usize },
    #[error("permutation length {got} does not match order {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("image array is not a bijection")]
    NotBijective,
    #[error("expected {expected} labels, got {got}")]
    LabelCountMismatch { expected: usize, got: usize },
}

/// Distinct gyration images, pooled so identical permutations are stored
/// once. `index` maps each (a,b) to its pool entry.
struct GyrPool {
    perms: Vec<Vec<usize>>,
    index: Vec<u32>, // n*n, row-major
}

fn build_gyr_pool(t: &CayleyTable, inv: &[usize]) -> GyrPool {
    let n = t.order();
    let mut perms: Vec<Vec<usize>> = Vec::new();
    let mut lookup: HashMap<Vec<usize>, u32> = HashMap::new();
    let mut index = Vec::with_capacity(n * n);
    let mut images = vec![0usize; n];
    for a in 0..n {
        for b in 0..n {
            let s = t.get(a, b);
            let neg_s = inv[s];
            for (c, img) in images.iter_mut().enumerate() {
                *img = t.get(neg_s, t.get(a, t.get(b, c)));
            }
            let id = match lookup.get(&images) {
                Some(&id) => id,
                None => {
                    let id = perms.len() as u32;
                    perms.push(images.clone());
                    lookup.insert(images.clone(), id);
                    id
                }
            };
            index.push(id);
        }
    }
    GyrPool { perms, index }
}

fn is_bijection(images: &[usize]) -> bool {
    let n = images.len();
    let mut seen = vec![false; n];
    for &x in images {
        if x >= n || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    true
}

/// Smallest (x,y) where `images` fails to commute with the table operation.
fn morphism_witness(t: &CayleyTable, images: &[usize]) -> Option<(usize, usize)> {
    let n = t.order();
    for x in 0..n {
        for y in 0..n {
            if images[t.get(x, y)] != t.get(images[x], images[y]) {
                return Some((x, y));
            }
        }
    }
    None
}

/// Checks the gyrogroup axioms in a fixed order: unique left identity,
/// left inverses, bijectivity of every table-derived gyration, the
/// automorphism property of each, gyroassociativity, and the left loop
/// property. Reports at most one violation per family.
pub fn verify_axioms(table: &CayleyTable) -> ValidationReport {
    let n = table.order();
    let mut violations = Vec::new();

    let identities: Vec<usize> = (0..n)
        .filter(|&e| (0..n).all(|a| table.get(e, a) == a))
        .collect();
    let e = match identities.first() {
        None => {
            violations.push(Violation::NoLeftIdentity);
            return ValidationReport::from_violations(violations);
        }
        Some(&e) => {
            if identities.len() > 1 {
                violations.push(Violation::DuplicateLeftIdentity {
                    first: identities[0],
                    second: identities[1],
                });
            }
            e
        }
    };

    let mut inv = vec![usize::MAX; n];
    let mut dup: Option<(usize, usize, usize)> = None;
    for (a, slot) in inv.iter_mut().enumerate() {
        let mut found: Option<usize> = None;
        for b in 0..n {
            if table.get(b, a) == e {
                match found {
                    None => found = Some(b),
                    Some(first) => {
                        if dup.is_none() {
                            dup = Some((a, first, b));
                        }
                        break;
                    }
                }
            }
        }
        match found {
            None => {
                violations.push(Violation::MissingLeftInverse { element: a });
                return ValidationReport::from_violations(violations);
            }
            Some(b) => *slot = b,
        }
    }
    if let Some((element, first, second)) = dup {
        violations.push(Violation::DuplicateLeftInverse {
            element,
            first,
            second,
        });
    }

    let pool = build_gyr_pool(table, &inv);
    let bijective: Vec<bool> = pool.perms.iter().map(|p| is_bijection(p)).collect();
    let morphism: Vec<Option<(usize, usize)>> = pool
        .perms
        .iter()
        .map(|p| morphism_witness(table, p))
        .collect();

    'bij: for a in 0..n {
        for b in 0..n {
            if !bijective[pool.index[a * n + b] as usize] {
                violations.push(Violation::GyrNotBijective { a, b });
                break 'bij;
            }
        }
    }
    'auto: for a in 0..n {
        for b in 0..n {
            if let Some((x, y)) = morphism[pool.index[a * n + b] as usize] {
                violations.push(Violation::GyrNotAutomorphism { a, b, x, y });
                break 'auto;
            }
        }
    }
    'assoc: for a in 0..n {
        for b in 0..n {
            let g = &pool.perms[pool.index[a * n + b] as usize];
            let ab = table.get(a, b);
            for (c, &gc) in g.iter().enumerate() {
                if table.get(a, table.get(b, c)) != table.get(ab, gc) {
                    violations.push(Violation::GyroassociativityFails { a, b, c });
                    break 'assoc;
                }
            }
        }
    }
    'loop_: for a in 0..n {
        for b in 0..n {
            if pool.index[a * n + b] != pool.index[table.get(a, b) * n + b] {
                violations.push(Violation::LeftLoopFails { a, b });
                break 'loop_;
            }
        }
    }
    ValidationReport::from_violations(violations)
}

/// A Cayley table that passed `verify_axioms`, with identity, inverses,
/// and all gyrations cached. Immutable after construction.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGyrogroup {
    table: CayleyTable,
    identity: usize,
    left_inverses: Vec<usize>,
    gyr_pool: Vec<Permutation>,
    gyr_index: Vec<u32>,
    labels: Option<Vec<String>>,
}

impl FiniteGyrogroup {
    /// Validates the table and caches derived structure.
    pub fn construct(table: CayleyTable, labels: Option<Vec<String>>) -> Result<Self, CoreError> {
        let report = verify_axioms(&table);
        if !report.valid {
            return Err(CoreError::InvalidGyrogroup(Box::new(report)));
        }
        let n = table.order();
        if let Some(ref l) = labels {
            if l.len() != n {
                return Err(CoreError::LabelCountMismatch {
                    expected: n,
                    got: l.len(),
                });
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table.get(e, a) == a))
            .expect("validated table has a left identity");
        let left_inverses: Vec<usize> = (0..n)
            .map(|a| {
                (0..n)
                    .find(|&b| table.get(b, a) == identity)
                    .expect("validated table has left inverses")
            })
            .collect();
        let pool = build_gyr_pool(&table, &left_inverses);
        let gyr_pool = pool
            .perms
            .into_iter()
            .map(|p| Permutation::from_images(p).expect("validated gyrations are bijections"))
            .collect();
        Ok(FiniteGyrogroup {
            table,
            identity,
            left_inverses,
            gyr_pool,
            gyr_index: pool.index,
            labels,
        })
    }

    pub fn order(&self) -> usize {
        self.table.order()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn table(&self) -> &CayleyTable {
        &self.table
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    fn check_index(&self, index: usize) -> Result<(), CoreError> {
        if index >= self.order() {
            return Err(CoreError::IndexOutOfRange {
                index,
                order: self.order(),
            });
        }
        Ok(())
    }

    /// Table entry (a, b), i.e. a + b.
    pub fn evaluate(&self, a: usize, b: usize) -> Result<usize, CoreError> {
        self.check_index(a)?;
        self.check_index(b)?;
        Ok(self.table.get(a, b))
    }

    /// The unique b with b + a = e.
    pub fn left_inverse(&self, a: usize) -> Result<usize, CoreError> {
        self.check_index(a)?;
        Ok(self.left_inverses[a])
    }

    /// The cached gyration gyr[a,b].
    pub fn gyration(&self, a: usize, b: usize) -> Result<&Permutation, CoreError> {
        self.check_index(a)?;
        self.check_index(b)?;
        Ok(self.gyr(a, b))
    }

    pub(crate) fn gyr(&self, a: usize, b: usize) -> &Permutation {
        &self.gyr_pool[self.gyr_index[a * self.order() + b] as usize]
    }

    /// True iff the permutation preserves the operation. Bijectivity is
    /// guaranteed by the `Permutation` type.
    pub fn is_automorphism(&self, p: &Permutation) -> Result<bool, CoreError> {
        if p.len() != self.order() {
            return Err(CoreError::LengthMismatch {
                expected: self.order(),
                got: p.len(),
            });
        }
        Ok(morphism_witness(&self.table, p.images()).is_none())
    }

    /// True iff every gyration is the identity; such a table is
    /// associative, i.e. a group.
    pub fn is_degenerate(&self) -> bool {
        self.gyr_pool.iter().all(|p| p.is_identity())
    }

    /// Number of distinct gyration permutations.
    pub fn distinct_gyration_count(&self) -> usize {
        self.gyr_pool.len()
    }
}

impl fmt::Debug for FiniteGyrogroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "FiniteGyrogroup(order {}, identity {}, {} distinct gyrations)",
            self.order(),
            self.identity,
            self.gyr_pool.len()
        )
    }
}
