//! Subgyrogroups: closure, enumeration, normality, cosets, quotients.
//!
//! Normality is the triple set equality a + (H + b) = (a + b) + H
//! = (a + H) + b for all a, b. A normal subgyrogroup is exactly the
//! kernel of a homomorphism onto the quotient by its left cosets, and
//! `try_quotient` exposes each way that construction can fail on a
//! non-normal subset.

use crate::gyrogroup::{CoreError, FiniteGyrogroup, ValidationReport};
use crate::subset::ElementSubset;
use crate::CayleyTable;
use thiserror::Error;

#[derive(Error, Debug)]
pub enum SubalgebraError {
    #[error("empty operand in set product")]
    EmptyOperand,
    #[error("empty subset")]
    EmptySubset,
    #[error("subset universe {got} does not match gyrogroup order {expected}")]
    UniverseMismatch { expected: usize, got: usize },
    #[error("order {order} exceeds full-enumeration limit {max}; use generator-closure mode")]
    OrderTooLarge { order: usize, max: usize },
    #[error("{0} is not a subgyrogroup")]
    NotASubgyrogroup(ElementSubset),
    #[error("{0} is not normal")]
    NotNormal(ElementSubset),
    #[error("coset product ({left_coset},{right_coset}) depends on representatives")]
    IllDefinedProduct {
        left_coset: usize,
        right_coset: usize,
    },
    #[error("map does not respect the operation at ({a},{b})")]
    NotAHomomorphism { a: usize, b: usize },
    #[error(transparent)]
    Core(#[from] CoreError),
}

/// Largest order for which `enumerate_subgyrogroups` scans all subsets.
pub const FULL_ENUMERATION_MAX: usize = 24;

/// Either a single element or a subset; both sides of `set_product`
/// accept either via `Into`.
#[derive(Clone, Debug)]
pub enum Operand {
    Element(usize),
    Set(ElementSubset),
}

impl From<usize> for Operand {
    fn from(x: usize) -> Self {
        Operand::Element(x)
    }
}

impl From<ElementSubset> for Operand {
    fn from(s: ElementSubset) -> Self {
        Operand::Set(s)
    }
}

impl From<&ElementSubset> for Operand {
    fn from(s: &ElementSubset) -> Self {
        Operand::Set(s.clone())
    }
}

fn check_subset(g: &FiniteGyrogroup, s: &ElementSubset) -> Result<(), SubalgebraError> {
    if s.universe() != g.order() {
        return Err(SubalgebraError::UniverseMismatch {
            expected: g.order(),
            got: s.universe(),
        });
    }
    Ok(())
}

fn operand_set(g: &FiniteGyrogroup, op: Operand) -> Result<ElementSubset, SubalgebraError> {
    match op {
        Operand::Element(x) => {
            if x >= g.order() {
                return Err(CoreError::IndexOutOfRange {
                    index: x,
                    order: g.order(),
                }
                .into());
            }
            Ok(ElementSubset::singleton(g.order(), x))
        }
        Operand::Set(s) => {
            check_subset(g, &s)?;
            if s.is_empty() {
                return Err(SubalgebraError::EmptyOperand);
            }
            Ok(s)
        }
    }
}

/// { x + y : x in A, y in B }. Singleton operands may be passed as bare
/// element indices. Empty set operands are rejected.
pub fn set_product(
    g: &FiniteGyrogroup,
    a: impl Into<Operand>,
    b: impl Into<Operand>,
) -> Result<ElementSubset, SubalgebraError> {
    let a = operand_set(g, a.into())?;
    let b = operand_set(g, b.into())?;
    let mut out = ElementSubset::empty(g.order());
    for x in a.iter() {
        for y in b.iter() {
            out.insert(g.table().get(x, y));
        }
    }
    Ok(out)
}

/// Smallest superset of `seed` plus the identity closed under + and
/// left inversion. Such a set is automatically closed under its own
/// gyrations.
pub fn closure(
    g: &FiniteGyrogroup,
    seed: &ElementSubset,
) -> Result<ElementSubset, SubalgebraError> {
    check_subset(g, seed)?;
    if seed.is_empty() {
        return Err(SubalgebraError::EmptySubset);
    }
    let t = g.table();
    let mut set = seed.clone();
    set.insert(g.identity());
    let mut frontier: Vec<usize> = set.iter().collect();
    while let Some(x) = frontier.pop() {
        let push = |set: &mut ElementSubset, frontier: &mut Vec<usize>, v: usize| {
            if !set.contains(v) {
                set.insert(v);
                frontier.push(v);
            }
        };
        push(
            &mut set,
            &mut frontier,
            g.left_inverse(x).expect("in range"),
        );
        let members: Vec<usize> = set.iter().collect();
        for y in members {
            push(&mut set, &mut frontier, t.get(x, y));
            push(&mut set, &mut frontier, t.get(y, x));
        }
    }
    Ok(set)
}

/// True iff `h` contains the identity and is closed under +, left
/// inversion, and all of its internal gyrations. Gyration closure is
/// implied by the rest but is checked independently.
pub fn is_subgyrogroup(g: &FiniteGyrogroup, h: &ElementSubset) -> Result<bool, SubalgebraError> {
    check_subset(g, h)?;
    if h.is_empty() {
        return Err(SubalgebraError::EmptySubset);
    }
    if !h.contains(g.identity()) {
        return Ok(false);
    }
    let t = g.table();
    let members: Vec<usize> = h.iter().collect();
    for &a in &members {
        if !h.contains(g.left_inverse(a).expect("in range")) {
            return Ok(false);
        }
        for &b in &members {
            if !h.contains(t.get(a, b)) {
                return Ok(false);
            }
        }
    }
    for &a in &members {
        for &b in &members {
            let gyr = g.gyration(a, b).expect("in range");
            if members.iter().any(|&c| !h.contains(gyr.apply(c))) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Scans every subset containing the identity for closure under +,
/// then confirms each survivor with the full subgyrogroup predicate.
pub fn enumerate_subgyrogroups(g: &FiniteGyrogroup) -> Result<Vec<ElementSubset>, SubalgebraError> {
    let n = g.order();
    if n > FULL_ENUMERATION_MAX {
        return Err(SubalgebraError::OrderTooLarge {
            order: n,
            max: FULL_ENUMERATION_MAX,
        });
    }
    let e = g.identity();
    let rows: Vec<&[usize]> = (0..n).map(|a| g.table().row(a)).collect();
    let mut found = Vec::new();
    let mut members: Vec<usize> = Vec::with_capacity(n);
    for mask in 0u32..(1u32 << n) {
        if mask & (1 << e) == 0 {
            continue;
        }
        members.clear();
        let mut m = mask;
        while m != 0 {
            members.push(m.trailing_zeros() as usize);
            m &= m - 1;
        }
        let closed = members
            .iter()
            .all(|&a| members.iter().all(|&b| mask & (1 << rows[a][b]) != 0));
        if closed {
            let set = ElementSubset::from_elements(n, members.iter().copied());
            debug_assert!(is_subgyrogroup(g, &set).unwrap());
            found.push(set);
        }
    }
    found.sort();
    Ok(found)
}

/// Result of generator-closure enumeration. `possibly_incomplete` is
/// always true: subgyrogroups needing more generators than the bound
/// are invisible to this mode.
#[derive(Clone, Debug)]
pub struct GeneratedEnumeration {
    pub sets: Vec<ElementSubset>,
    pub possibly_incomplete: bool,
}

/// Closes every generator set of size at most `max_generators`.
/// Usable at any order, at the cost of possible incompleteness.
pub fn enumerate_subgyrogroups_generated(
    g: &FiniteGyrogroup,
    max_generators: usize,
) -> Result<GeneratedEnumeration, SubalgebraError> {
    let n = g.order();
    let mut sets = std::collections::BTreeSet::new();
    sets.insert(ElementSubset::singleton(n, g.identity()));
    let mut gens: Vec<usize> = Vec::new();
    fn rec(
        g: &FiniteGyrogroup,
        start: usize,
        left: usize,
        gens: &mut Vec<usize>,
        out: &mut std::collections::BTreeSet<ElementSubset>,
    ) -> Result<(), SubalgebraError> {
        if !gens.is_empty() {
            let seed = ElementSubset::from_elements(g.order(), gens.iter().copied());
            out.insert(closure(g, &seed)?);
        }
        if left == 0 {
            return Ok(());
        }
        for x in start..g.order() {
            gens.push(x);
            rec(g, x + 1, left - 1, gens, out)?;
            gens.pop();
        }
        Ok(())
    }
    rec(g, 0, max_generators, &mut gens, &mut sets)?;
    Ok(GeneratedEnumeration {
        sets: sets.into_iter().collect(),
        possibly_incomplete: true,
    })
}

/// First pair (a, b) in lexicographic order at which the triple coset
/// equality fails, or None when `h` is normal. Assumes `h` is already
/// known to be a subgyrogroup.
pub(crate) fn normality_witness(g: &FiniteGyrogroup, h: &ElementSubset) -> Option<(usize, usize)> {
    let n = g.order();
    let t = g.table();
    let members: Vec<usize> = h.iter().collect();
    // h_right[b] = H + b, h_left[a] = a + H
    let mut h_right = Vec::with_capacity(n);
    let mut h_left = Vec::with_capacity(n);
    for x in 0..n {
        let mut r = ElementSubset::empty(n);
        let mut l = ElementSubset::empty(n);
        for &m in &members {
            r.insert(t.get(m, x));
            l.insert(t.get(x, m));
        }
        h_right.push(r);
        h_left.push(l);
    }
    for a in 0..n {
        for b in 0..n {
            let mut lhs = ElementSubset::empty(n); // a + (H + b)
            for x in h_right[b].iter() {
                lhs.insert(t.get(a, x));
            }
            let mid = &h_left[t.get(a, b)]; // (a + b) + H
            if lhs != *mid {
                return Some((a, b));
            }
            let mut rhs = ElementSubset::empty(n); // (a + H) + b
            for x in h_left[a].iter() {
                rhs.insert(t.get(x, b));
            }
            if rhs != *mid {
                return Some((a, b));
            }
        }
    }
    None
}

/// Triple coset equality for all pairs. Errors if `h` is not a
/// subgyrogroup.
pub fn is_normal(g: &FiniteGyrogroup, h: &ElementSubset) -> Result<bool, SubalgebraError> {
    if !is_subgyrogroup(g, h)? {
        return Err(SubalgebraError::NotASubgyrogroup(h.clone()));
    }
    Ok(normality_witness(g, h).is_none())
}

/// Full enumeration filtered by normality.
pub fn enumerate_normals(g: &FiniteGyrogroup) -> Result<Vec<ElementSubset>, SubalgebraError> {
    let subs = enumerate_subgyrogroups(g)?;
    Ok(subs
        .into_iter()
        .filter(|h| normality_witness(g, h).is_none())
        .collect())
}

/// Generator-closure enumeration filtered by normality.
pub fn enumerate_normals_generated(
    g: &FiniteGyrogroup,
    max_generators: usize,
) -> Result<GeneratedEnumeration, SubalgebraError> {
    let sub = enumerate_subgyrogroups_generated(g, max_generators)?;
    Ok(GeneratedEnumeration {
        sets: sub
            .sets
            .into_iter()
            .filter(|h| normality_witness(g, h).is_none())
            .collect(),
        possibly_incomplete: true,
    })
}

/// Left cosets of a normal subgyrogroup, sorted by minimum element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetFamily {
    cosets: Vec<ElementSubset>,
    index: Vec<usize>,
}

impl CosetFamily {
    pub fn cosets(&self) -> &[ElementSubset] {
        &self.cosets
    }

    pub fn len(&self) -> usize {
        self.cosets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cosets.is_empty()
    }

    /// Position of the coset containing `element`.
    pub fn index_of(&self, element: usize) -> usize {
        self.index[element]
    }

    /// Minimum element of coset `i`.
    pub fn representative(&self, i: usize) -> usize {
        self.cosets[i].iter().next().expect("cosets are nonempty")
    }
}

/// Cosets of an arbitrary nonempty subset, or the smallest element that
/// stops them from partitioning the gyrogroup.
fn coset_family(g: &FiniteGyrogroup, h: &ElementSubset) -> Result<CosetFamily, usize> {
    let n = g.order();
    let t = g.table();
    let members: Vec<usize> = h.iter().collect();
    let mut cosets: Vec<ElementSubset> = Vec::new();
    for a in 0..n {
        let mut c = ElementSubset::empty(n);
        for &m in &members {
            c.insert(t.get(a, m));
        }
        if !cosets.contains(&c) {
            cosets.push(c);
        }
    }
    cosets.sort_by_key(|c| c.iter().next().unwrap_or(n));
    let mut index = vec![usize::MAX; n];
    for (x, slot) in index.iter_mut().enumerate() {
        let mut owner = None;
        for (i, c) in cosets.iter().enumerate() {
            if c.contains(x) {
                if owner.is_some() {
                    return Err(x);
                }
                owner = Some(i);
            }
        }
        match owner {
            Some(i) => *slot = i,
            None => return Err(x),
        }
    }
    Ok(CosetFamily { cosets, index })
}

/// The gyrogroup induced on a subgyrogroup's elements, relabeled in
/// ascending order. Closure makes the restricted table a gyrogroup.
pub fn induced_subgyrogroup(
    g: &FiniteGyrogroup,
    h: &ElementSubset,
) -> Result<FiniteGyrogroup, SubalgebraError> {
    if !is_subgyrogroup(g, h)? {
        return Err(SubalgebraError::NotASubgyrogroup(h.clone()));
    }
    let members: Vec<usize> = h.iter().collect();
    let mut pos = vec![usize::MAX; g.order()];
    for (i, &m) in members.iter().enumerate() {
        pos[m] = i;
    }
    let rows: Vec<Vec<usize>> = members
        .iter()
        .map(|&a| members.iter().map(|&b| pos[g.table().get(a, b)]).collect())
        .collect();
    let table = CayleyTable::from_rows(rows).expect("closure keeps entries inside the subset");
    Ok(FiniteGyrogroup::construct(table, None)
        .expect("a subgyrogroup is a gyrogroup under the induced operation"))
}

/// Left cosets a + N of a normal subgyrogroup.
pub fn left_cosets(g: &FiniteGyrogroup, n: &ElementSubset) -> Result<CosetFamily, SubalgebraError> {
    if !is_normal(g, n)? {
        return Err(SubalgebraError::NotNormal(n.clone()));
    }
    Ok(coset_family(g, n).expect("cosets of a normal subgyrogroup partition the gyrogroup"))
}

/// Operation-preserving map between validated gyrogroups.
#[derive(Clone, Debug)]
pub struct GyroHomomorphism {
    source: FiniteGyrogroup,
    target: FiniteGyrogroup,
    map: Vec<usize>,
}

impl GyroHomomorphism {
    /// Validates length, range, and the morphism law map(a+b) =
    /// map(a) +' map(b); the law is checked exhaustively.
    pub fn new(
        source: FiniteGyrogroup,
        target: FiniteGyrogroup,
        map: Vec<usize>,
    ) -> Result<Self, SubalgebraError> {
        let n = source.order();
        if map.len() != n {
            return Err(CoreError::LengthMismatch {
                expected: n,
                got: map.len(),
            }
            .into());
        }
        for &v in &map {
            if v >= target.order() {
                return Err(CoreError::IndexOutOfRange {
                    index: v,
                    order: target.order(),
                }
                .into());
            }
        }
        for a in 0..n {
            for b in 0..n {
                let lhs = map[source.table().get(a, b)];
                let rhs = target.table().get(map[a], map[b]);
                if lhs != rhs {
                    return Err(SubalgebraError::NotAHomomorphism { a, b });
                }
            }
        }
        Ok(GyroHomomorphism {
            source,
            target,
            map,
        })
    }

    pub fn source(&self) -> &FiniteGyrogroup {
        &self.source
    }

    pub fn target(&self) -> &FiniteGyrogroup {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, a: usize) -> Result<usize, CoreError> {
        self.map.get(a).copied().ok_or(CoreError::IndexOutOfRange {
            index: a,
            order: self.source.order(),
        })
    }

    /// Preimage of the target identity. Infallible: the morphism law
    /// was established at construction.
    pub fn kernel(&self) -> ElementSubset {
        ElementSubset::from_elements(
            self.source.order(),
            self.map
                .iter()
                .enumerate()
                .filter(|&(_, &v)| v == self.target.identity())
                .map(|(a, _)| a),
        )
    }
}

/// Why quotient construction failed for a subset that is not normal.
#[derive(Error, Debug)]
pub enum QuotientFailure {
    #[error("left cosets do not partition the gyrogroup (element {witness})")]
    CosetsNotPartition { witness: usize },
    #[error("coset product ({left_coset},{right_coset}) depends on representatives")]
    RepresentativeDependent {
        left_coset: usize,
        right_coset: usize,
    },
    #[error("coset table is not a gyrogroup: {0}")]
    NotAGyrogroup(Box<ValidationReport>),
    #[error("kernel of the projection differs from the given subset")]
    KernelMismatch,
}

/// Attempts the quotient of `g` by an arbitrary nonempty subset,
/// reporting exactly where the construction breaks when it does. For a
/// normal subgyrogroup every step succeeds; each failure variant is
/// reachable for suitable non-normal input.
pub fn try_quotient(
    g: &FiniteGyrogroup,
    h: &ElementSubset,
) -> Result<(FiniteGyrogroup, GyroHomomorphism), QuotientFailure> {
    assert_eq!(
        h.universe(),
        g.order(),
        "subset universe must match the gyrogroup order"
    );
    assert!(!h.is_empty(), "subset must be nonempty");
    let n = g.order();
    let t = g.table();
    let family = match coset_family(g, h) {
        Ok(f) => f,
        Err(witness) => return Err(QuotientFailure::CosetsNotPartition { witness }),
    };
    let k = family.len();
    let mut q = vec![usize::MAX; k * k];
    for a in 0..n {
        let i = family.index_of(a);
        for b in 0..n {
            let j = family.index_of(b);
            let v = family.index_of(t.get(a, b));
            let slot = &mut q[i * k + j];
            if *slot == usize::MAX {
                *slot = v;
            } else if *slot != v {
                return Err(QuotientFailure::RepresentativeDependent {
                    left_coset: i,
                    right_coset: j,
                });
            }
        }
    }
    let rows: Vec<Vec<usize>> = (0..k).map(|i| q[i * k..(i + 1) * k].to_vec()).collect();
    let table = CayleyTable::from_rows(rows).expect("coset indices are below the coset count");
    let report = crate::gyrogroup::verify_axioms(&table);
    if !report.valid {
        return Err(QuotientFailure::NotAGyrogroup(Box::new(report)));
    }
    let labels = (0..k)
        .map(|i| family.representative(i).to_string())
        .collect();
    let quotient = FiniteGyrogroup::construct(table, Some(labels))
        .expect("table was just validated and labels match the order");
    let map: Vec<usize> = (0..n).map(|a| family.index_of(a)).collect();
    let projection = GyroHomomorphism::new(g.clone(), quotient.clone(), map)
        .expect("a consistent coset table makes the projection a homomorphism");
    if projection.kernel() != *h {
        return Err(QuotientFailure::KernelMismatch);
    }
    Ok((quotient, projection))
}

/// Quotient by a normal subgyrogroup: the coset gyrogroup, labeled by
/// minimal representatives, and the canonical projection.
pub fn quotient(
    g: &FiniteGyrogroup,
    n: &ElementSubset,
) -> Result<(FiniteGyrogroup, GyroHomomorphism), SubalgebraError> {
    if !is_normal(g, n)? {
        return Err(SubalgebraError::NotNormal(n.clone()));
    }
    match try_quotient(g, n) {
        Ok(pair) => Ok(pair),
        Err(QuotientFailure::RepresentativeDependent {
            left_coset,
            right_coset,
        }) => Err(SubalgebraError::IllDefinedProduct {
            left_coset,
            right_coset,
        }),
        Err(other) => unreachable!("quotient by a normal subgyrogroup cannot fail: {other}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::fixture;

    fn set(g: &FiniteGyrogroup, elems: &[usize]) -> ElementSubset {
        ElementSubset::from_elements(g.order(), elems.iter().copied())
    }

    fn sets(g: &FiniteGyrogroup, lists: &[&[usize]]) -> Vec<ElementSubset> {
        lists.iter().map(|l| set(g, l)).collect()
    }

    #[test]
    fn set_products_follow_the_table() {
        let g = fixture("K1").unwrap().into_gyrogroup();
        assert_eq!(
            set_product(&g, 2, set(&g, &[0, 1])).unwrap(),
            set(&g, &[2, 3])
        );
        let s = set(&g, &[1, 4, 6]);
        assert_eq!(set_product(&g, 0, &s).unwrap(), s);
        let h = set(&g, &[0, 1]);
        assert_eq!(set_product(&g, &h, &h).unwrap(), h);
    }

    #[test]
    fn set_product_rejects_bad_operands() {
        let g = fixture("K1").unwrap().into_gyrogroup();
        assert!(matches!(
            set_product(&g, ElementSubset::empty(8), 1),
            Err(SubalgebraError::EmptyOperand)
        ));
        assert!(matches!(
            set_product(&g, 8, 1),
            Err(SubalgebraError::Core(CoreError::IndexOutOfRange { .. }))
        ));
        assert!(matches!(
            set_product(&g, ElementSubset::empty(9), 1),
            Err(SubalgebraError::UniverseMismatch {
                expected: 8,
                got: 9
            })
        ));
    }

    #[test]
    fn set_product_is_monotone() {
        let g = fixture("K1").unwrap().into_gyrogroup();
        let small = set(&g, &[1, 3]);
        let big = set(&g, &[1, 3, 6]);
        let other = set(&g, &[2, 5]);
        let p_small = set_product(&g, &small, &other).unwrap();
        let p_big = set_product(&g, &big, &other).unwrap();
        assert!(p_small.is_subset(&p_big));
    }

    #[test]
    fn closures_reach_fixed_points() {
        let g = fixture("K1").unwrap().into_gyrogroup();
        assert_eq!(closure(&g, &set(&g, &[2])).unwrap(), set(&g, &[0, 2]));
        assert_eq!(closure(&g, &set(&g, &[0])).unwrap(), set(&g, &[0]));
        assert_eq!(closure(&g, &set(&g, &[6])).unwrap(), set(&g, &[0, 1, 6, 7]));
        assert_eq!(
            closure(&g, &set(&g, &[2, 4])).unwrap(),
            ElementSubset::full(8)
        );
        let k2 = fixture("K2").unwrap().into_gyrogroup();
        assert_eq!(closure(&k2, &set(&k2, &[8])).unwrap(), set(&k2, &[0, 8]));
        assert!(matches!(
            closure(&g, &ElementSubset::empty(8)),
            Err(SubalgebraError::EmptySubset)
        ));
    }

    #[test]
    fn subgyrogroup_predicate_matches_known_sets() {
        let g = fixture("K1").unwrap().into_gyrogroup();
        assert!(is_subgyrogroup(&g, &set(&g, &[0, 1, 2, 3])).unwrap());
        assert!(!is_subgyrogroup(&g, &set(&g, &[0, 4, 6])).unwrap());
        assert!(is_subgyrogroup(&g, &set(&g, &[0])).unwrap());
        assert!(!is_subgyrogroup(&g, &set(&g, &[1, 2])).unwrap());
        assert!(matches!(
            is_subgyrogroup(&g, &ElementSubset::empty(8)),
            Err(SubalgebraError::EmptySubset)
        ));
    }

    #[test]
    fn k1_full_enumeration_is_exact() {
        let g = fixture("K1").unwrap().into_gyrogroup();
        let subs = enumerate_subgyrogroups(&g).unwrap();
        let expected = sets(
            &g,
            &[
                &[0],
                &[0, 1],
                &[0, 2],
                &[0, 3],
                &[0, 4],
                &[0, 5],
                &[0, 1, 2, 3],
                &[0, 1, 4, 5],
                &[0, 1, 6, 7],
                &[0, 1, 2, 3, 4, 5, 6, 7],
            ],
        );
        assert_eq!(subs, expected);
        for h in &subs {
            assert_eq!(&closure(&g, h).unwrap(), h);
        }
    }

    #[test]
    fn k2_full_enumeration_counts_and_spot_checks() {
        let g = fixture("K2").unwrap().into_gyrogroup();
        let subs = enumerate_subgyrogroups(&g).unwrap();
        assert_eq!(subs.len(), 35);
        for h in &[
            &[0usize, 9][..],
            &[0, 2, 9, 11],
            &[0, 1, 6, 7, 8, 9, 14, 15],
        ] {
            assert!(subs.contains(&set(&g, h)));
        }
        assert_eq!(subs.first().unwrap(), &set(&g, &[0]));
        assert_eq!(subs.last().unwrap(), &ElementSubset::full(16));
    }

    #[test]
    fn trivial_gyrogroup_has_one_subgyrogroup() {
        let t = CayleyTable::from_rows(vec![vec![0]]).unwrap();
        let g = FiniteGyrogroup::construct(t, None).unwrap();
        assert_eq!(
            enumerate_subgyrogroups(&g).unwrap(),
            vec![ElementSubset::full(1)]
        );
    }

    #[test]
    fn generated_enumeration_recovers_the_full_lattice_on_small_orders() {
        for name in ["K1", "K2"] {
            let g = fixture(name).unwrap().into_gyrogroup();
            let full = enumerate_subgyrogroups(&g).unwrap();
            let gen = enumerate_subgyrogroups_generated(&g, 3).unwrap();
            assert!(gen.possibly_incomplete);
            assert_eq!(gen.sets, full);
        }
    }

    #[test]
    fn normality_matches_the_published_list() {
        let g = fixture("K1").unwrap().into_gyrogroup();
        assert!(is_normal(&g, &set(&g, &[0, 1])).unwrap());
        assert!(!is_normal(&g, &set(&g, &[0, 2])).unwrap());
        assert!(is_normal(&g, &ElementSubset::full(8)).unwrap());
        assert!(matches!(
            is_normal(&g, &set(&g, &[0, 4, 6])),
            Err(SubalgebraError::NotASubgyrogroup(_))
        ));
        let normals = enumerate_normals(&g).unwrap();
        let expected = sets(
            &g,
            &[
                &[0],
                &[0, 1],
                &[0, 1, 2, 3],
                &[0, 1, 4, 5],
                &[0, 1, 6, 7],
                &[0, 1, 2, 3, 4, 5, 6, 7],
            ],
        );
        assert_eq!(normals, expected);
    }

    #[test]
    fn normality_witnesses_are_lex_minimal() {
        let g = fixture("K1").unwrap().into_gyrogroup();
        assert_eq!(normality_witness(&g, &set(&g, &[0, 2])), Some((4, 4)));
        assert_eq!(normality_witness(&g, &set(&g, &[0, 4])), Some((0, 6)));
        assert_eq!(normality_witness(&g, &set(&g, &[0, 1])), None);
    }

    #[test]
    fn cosets_of_known_normals() {
        let g = fixture("K1").unwrap().into_gyrogroup();
        let family = left_cosets(&g, &set(&g, &[0, 1])).unwrap();
        assert_eq!(
            family.cosets(),
            sets(&g, &[&[0, 1], &[2, 3], &[4, 5], &[6, 7]]).as_slice()
        );
        assert_eq!(family.index_of(5), 2);
        assert_eq!(family.representative(3), 6);
        let singletons = left_cosets(&g, &set(&g, &[0])).unwrap();
        assert_eq!(singletons.len(), 8);
        let whole = left_cosets(&g, &ElementSubset::full(8)).unwrap();
        assert_eq!(whole.len(), 1);
        assert!(matches!(
            left_cosets(&g, &set(&g, &[0, 2])),
            Err(SubalgebraError::NotNormal(_))
        ));
    }

    #[test]
    fn quotient_by_order_two_normal_is_the_klein_group() {
        let g = fixture("K1").unwrap().into_gyrogroup();
        let (q, proj) = quotient(&g, &set(&g, &[0, 1])).unwrap();
        assert_eq!(q.order(), 4);
        assert!(q.is_degenerate());
        let klein: Vec<Vec<usize>> = vec![
            vec![0, 1, 2, 3],
            vec![1, 0, 3, 2],
            vec![2, 3, 0, 1],
            vec![3, 2, 1, 0],
        ];
        let rows: Vec<Vec<usize>> = q.table().rows().map(|r| r.to_vec()).collect();
        assert_eq!(rows, klein);
        assert_eq!(q.labels().unwrap(), ["0", "2", "4", "6"]);
        assert_eq!(proj.kernel(), set(&g, &[0, 1]));
        assert_eq!(proj.apply(7).unwrap(), 3);
    }

    #[test]
    fn quotient_edge_cases() {
        let g = fixture("K1").unwrap().into_gyrogroup();
        let (q, _) = quotient(&g, &set(&g, &[0])).unwrap();
        let rows: Vec<Vec<usize>> = q.table().rows().map(|r| r.to_vec()).collect();
        let orig: Vec<Vec<usize>> = g.table().rows().map(|r| r.to_vec()).collect();
        assert_eq!(rows, orig);
        let (t, _) = quotient(&g, &ElementSubset::full(8)).unwrap();
        assert_eq!(t.order(), 1);
        assert!(matches!(
            quotient(&g, &set(&g, &[0, 2])),
            Err(SubalgebraError::NotNormal(_))
        ));
    }

    #[test]
    fn try_quotient_reports_each_failure_mode() {
        let g = fixture("K1").unwrap().into_gyrogroup();
        for h in [&[0usize, 2][..], &[0, 3]] {
            assert!(matches!(
                try_quotient(&g, &set(&g, h)),
                Err(QuotientFailure::RepresentativeDependent { .. })
            ));
        }
        for h in [&[0usize, 4][..], &[0, 5]] {
            assert!(matches!(
                try_quotient(&g, &set(&g, h)),
                Err(QuotientFailure::CosetsNotPartition { .. })
            ));
        }
        assert!(try_quotient(&g, &set(&g, &[0, 1])).is_ok());
    }

    #[test]
    fn homomorphism_validation_and_kernels() {
        let g = fixture("K1").unwrap().into_gyrogroup();
        let id = GyroHomomorphism::new(g.clone(), g.clone(), (0..8).collect()).unwrap();
        assert_eq!(id.kernel(), set(&g, &[0]));
        let t = CayleyTable::from_rows(vec![vec![0]]).unwrap();
        let trivial = FiniteGyrogroup::construct(t, None).unwrap();
        let constant = GyroHomomorphism::new(g.clone(), trivial, vec![0; 8]).unwrap();
        assert_eq!(constant.kernel(), ElementSubset::full(8));
        let mut bad = vec![0usize; 8];
        bad[1] = 1;
        assert!(matches!(
            GyroHomomorphism::new(g.clone(), g.clone(), bad),
            Err(SubalgebraError::NotAHomomorphism { .. })
        ));
    }

    #[test]
    fn induced_tables_relabel_by_position() {
        let g = fixture("K1").unwrap().into_gyrogroup();
        let sub = induced_subgyrogroup(&g, &set(&g, &[0, 1])).unwrap();
        let rows: Vec<Vec<usize>> = sub.table().rows().map(|r| r.to_vec()).collect();
        assert_eq!(rows, vec![vec![0, 1], vec![1, 0]]);
        assert!(sub.is_degenerate());
        let whole = induced_subgyrogroup(&g, &ElementSubset::full(8)).unwrap();
        assert_eq!(whole.table(), g.table());
        assert!(!whole.is_degenerate());
        assert!(matches!(
            induced_subgyrogroup(&g, &set(&g, &[0, 4, 6])),
            Err(SubalgebraError::NotASubgyrogroup(_))
        ));
    }

    #[test]
    fn normality_agrees_with_quotient_and_kernel_on_k1() {
        let g = fixture("K1").unwrap().into_gyrogroup();
        for h in enumerate_subgyrogroups(&g).unwrap() {
            let normal = is_normal(&g, &h).unwrap();
            match try_quotient(&g, &h) {
                Ok((q, proj)) => {
                    assert!(normal, "quotient succeeded for non-normal {h}");
                    assert_eq!(proj.kernel(), h);
                    assert_eq!(g.order(), h.len() * q.order());
                }
                Err(_) => assert!(!normal, "quotient failed for normal {h}"),
            }
        }
    }
}
