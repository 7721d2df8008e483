//! Finite groups given by full multiplication tables.
//!
//! Elements are indices `0..order` and index `0` is always the identity.
//! Subgroups and cosets are kept in canonical form (sorted element lists,
//! minimal coset representatives), so equality is structural equality.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

/// Index of a group element.
pub type Element = usize;

/// The identity element of every [`FiniteGroup`].
pub const IDENTITY: Element = 0;

/// Default cap on the order of groups accepted by [`FiniteGroup::from_table`].
pub const DEFAULT_MAX_ORDER: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("BadTable: a group needs at least one element")]
    Empty,
    #[error("BadTable: row {row} has {len} entries, expected {order}")]
    NotSquare { row: usize, len: usize, order: usize },
    #[error("BadTable: entry ({row}, {col}) = {value} is out of range")]
    EntryOutOfRange { row: usize, col: usize, value: usize },
    #[error("BadTable: order {order} exceeds the configured cap {cap}")]
    TooLarge { order: usize, cap: usize },
    #[error("BadTable: expected {expected} labels, got {got}")]
    LabelCount { expected: usize, got: usize },
    #[error("NoIdentity: no element is a two-sided identity")]
    NoIdentity,
    #[error("NoInverse({0}): element has no two-sided inverse")]
    NoInverse(Element),
    #[error("NotAssociative({0}, {1}, {2}): (ab)c != a(bc)")]
    NotAssociative(Element, Element, Element),
    #[error("element {0} is not in the group")]
    ElementOutOfRange(Element),
    #[error("NotASubgroup: {0}")]
    NotASubgroup(String),
    #[error("NotNormal: conjugating by {element} moves the subgroup")]
    NotNormal { element: Element },
    #[error("NotAHomomorphism: map({a}*{b}) != map({a})*map({b})")]
    NotAHomomorphism { a: Element, b: Element },
    #[error("NotAHomomorphism: {0}")]
    BadHomData(String),
    #[error("BadPermutation: {0}")]
    BadPermutation(String),
}

/// A finite group stored as a multiplication table.
#[derive(Clone, PartialEq, Eq, Serialize)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<Element>,
    inverses: Vec<Element>,
    labels: Vec<String>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup(order={}, labels={:?})", self.order, self.labels)
    }
}

impl FiniteGroup {
    /// Validates a multiplication table with the default order cap.
    pub fn from_table(
        table: Vec<Vec<Element>>,
        labels: Option<Vec<String>>,
    ) -> Result<Self, GroupError> {
        Self::from_table_with_cap(table, labels, DEFAULT_MAX_ORDER)
    }

    /// Validates a multiplication table. If the identity is not at index 0
    /// the elements are relabeled so that it is.
    pub fn from_table_with_cap(
        table: Vec<Vec<Element>>,
        labels: Option<Vec<String>>,
        cap: usize,
    ) -> Result<Self, GroupError> {
        let order = table.len();
        if order == 0 {
            return Err(GroupError::Empty);
        }
        if order > cap {
            return Err(GroupError::TooLarge { order, cap });
        }
        for (row, entries) in table.iter().enumerate() {
            if entries.len() != order {
                return Err(GroupError::NotSquare { row, len: entries.len(), order });
            }
            if let Some((col, &value)) = entries.iter().enumerate().find(|(_, &v)| v >= order) {
                return Err(GroupError::EntryOutOfRange { row, col, value });
            }
        }
        let labels = match labels {
            Some(l) if l.len() != order => {
                return Err(GroupError::LabelCount { expected: order, got: l.len() })
            }
            Some(l) => l,
            None => (0..order).map(|i| i.to_string()).collect(),
        };

        let identity = (0..order)
            .find(|&e| (0..order).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or(GroupError::NoIdentity)?;

        // swap indices 0 and `identity`; the swap is its own inverse
        let relabel = |i: Element| {
            if i == identity {
                0
            } else if i == 0 {
                identity
            } else {
                i
            }
        };
        let mut flat = vec![0; order * order];
        for a in 0..order {
            for b in 0..order {
                flat[a * order + b] = relabel(table[relabel(a)][relabel(b)]);
            }
        }
        let labels: Vec<String> = (0..order).map(|i| labels[relabel(i)].clone()).collect();

        let mut inverses = vec![0; order];
        for a in 0..order {
            inverses[a] = (0..order)
                .find(|&b| flat[a * order + b] == 0 && flat[b * order + a] == 0)
                .ok_or(GroupError::NoInverse(a))?;
        }
        for a in 0..order {
            for b in 0..order {
                let ab = flat[a * order + b];
                for c in 0..order {
                    let bc = flat[b * order + c];
                    if flat[ab * order + c] != flat[a * order + bc] {
                        return Err(GroupError::NotAssociative(a, b, c));
                    }
                }
            }
        }
        Ok(FiniteGroup { order, table: flat, inverses, labels })
    }

    /// The one-element group.
    pub fn trivial() -> Self {
        FiniteGroup {
            order: 1,
            table: vec![0],
            inverses: vec![0],
            labels: vec!["e".to_string()],
        }
    }

    /// The cyclic group of order `n`, element `i` standing for `i mod n`.
    pub fn cyclic(n: usize, labels: Option<Vec<String>>) -> Result<Self, GroupError> {
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::from_table(table, labels)
    }

    /// Closes a set of named permutations (image lists on `0..degree`) into a
    /// group. The identity is labeled `e`; other elements are labeled by the
    /// shortest generator word found, joined with `_`.
    ///
    /// Products compose right to left: `(a*b)(p) = a(b(p))`.
    pub fn from_permutations(generators: &[(String, Vec<usize>)]) -> Result<Self, GroupError> {
        let degree = generators.iter().map(|(_, p)| p.len()).max().unwrap_or(0);
        for (name, perm) in generators {
            if perm.len() != degree {
                return Err(GroupError::BadPermutation(format!(
                    "{name} acts on {} points, expected {degree}",
                    perm.len()
                )));
            }
            let distinct: HashSet<_> = perm.iter().collect();
            if distinct.len() != degree || perm.iter().any(|&p| p >= degree) {
                return Err(GroupError::BadPermutation(format!("{name} is not a bijection")));
            }
        }
        let identity: Vec<usize> = (0..degree).collect();
        let mut perms = vec![identity.clone()];
        let mut labels = vec!["e".to_string()];
        let mut index: HashMap<Vec<usize>, Element> = HashMap::from([(identity, 0)]);
        let mut queue = VecDeque::from([0]);
        while let Some(x) = queue.pop_front() {
            for (name, s) in generators {
                let product: Vec<usize> = (0..degree).map(|p| perms[x][s[p]]).collect();
                if index.contains_key(&product) {
                    continue;
                }
                if perms.len() >= DEFAULT_MAX_ORDER {
                    return Err(GroupError::TooLarge { order: perms.len() + 1, cap: DEFAULT_MAX_ORDER });
                }
                let label = if x == 0 { name.clone() } else { format!("{}_{}", labels[x], name) };
                index.insert(product.clone(), perms.len());
                queue.push_back(perms.len());
                perms.push(product);
                labels.push(label);
            }
        }
        let table = perms
            .iter()
            .map(|a| {
                perms
                    .iter()
                    .map(|b| index[&(0..degree).map(|p| a[b[p]]).collect::<Vec<_>>()])
                    .collect()
            })
            .collect();
        Self::from_table(table, Some(labels))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn elements(&self) -> std::ops::Range<Element> {
        0..self.order
    }

    #[inline]
    pub fn mul(&self, a: Element, b: Element) -> Element {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: Element) -> Element {
        self.inverses[a]
    }

    /// `g h g⁻¹`
    pub fn conjugate(&self, g: Element, h: Element) -> Element {
        self.mul(self.mul(g, h), self.inv(g))
    }

    pub fn label(&self, a: Element) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn element_by_label(&self, label: &str) -> Option<Element> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    fn check(&self, a: Element) -> Result<(), GroupError> {
        if a < self.order {
            Ok(())
        } else {
            Err(GroupError::ElementOutOfRange(a))
        }
    }

    /// Validates that `elements` forms a subgroup and returns it in canonical form.
    pub fn subgroup<I: IntoIterator<Item = Element>>(&self, elements: I) -> Result<Subgroup, GroupError> {
        let set: BTreeSet<Element> = elements.into_iter().collect();
        for &a in &set {
            self.check(a)?;
        }
        if !set.contains(&IDENTITY) {
            return Err(GroupError::NotASubgroup("missing the identity".into()));
        }
        for &a in &set {
            if !set.contains(&self.inv(a)) {
                return Err(GroupError::NotASubgroup(format!("not closed under inversion at {a}")));
            }
            for &b in &set {
                if !set.contains(&self.mul(a, b)) {
                    return Err(GroupError::NotASubgroup(format!("{a}*{b} escapes the set")));
                }
            }
        }
        Ok(Subgroup::from_sorted(set.into_iter().collect()))
    }

    /// The subgroup generated by `generators`.
    pub fn generated_by(&self, generators: &[Element]) -> Subgroup {
        let mut seen = vec![false; self.order];
        seen[IDENTITY] = true;
        let mut queue = VecDeque::from([IDENTITY]);
        while let Some(x) = queue.pop_front() {
            for &s in generators {
                let y = self.mul(x, s);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        Subgroup::from_sorted(self.elements().filter(|&a| seen[a]).collect())
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup::trivial()
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup::from_sorted(self.elements().collect())
    }

    /// Every subgroup exactly once, sorted by (size, element list).
    ///
    /// Walks the lattice upwards from the trivial subgroup, adjoining one
    /// element at a time.
    pub fn list_subgroups(&self) -> Vec<Subgroup> {
        let mut found: HashMap<Subgroup, Vec<Element>> = HashMap::new();
        let trivial = Subgroup::trivial();
        found.insert(trivial.clone(), Vec::new());
        let mut queue = VecDeque::from([trivial]);
        while let Some(sub) = queue.pop_front() {
            let gens = found[&sub].clone();
            for g in self.elements() {
                if sub.contains(g) {
                    continue;
                }
                let mut extended = gens.clone();
                extended.push(g);
                let bigger = self.generated_by(&extended);
                if !found.contains_key(&bigger) {
                    found.insert(bigger.clone(), extended);
                    queue.push_back(bigger);
                }
            }
        }
        let mut all: Vec<Subgroup> = found.into_keys().collect();
        all.sort_by(|a, b| (a.len(), a.elements()).cmp(&(b.len(), b.elements())));
        all
    }

    /// `g H g⁻¹`
    pub fn conjugate_subgroup(&self, g: Element, h: &Subgroup) -> Subgroup {
        let mut elements: Vec<Element> = h.iter().map(|x| self.conjugate(g, x)).collect();
        elements.sort_unstable();
        Subgroup::from_sorted(elements)
    }

    /// The coset `αK` with its minimal element as representative.
    pub fn canonical_coset(&self, alpha: Element, k: &Subgroup) -> Coset {
        Coset { subgroup: k.clone(), representative: self.coset_rep(alpha, k) }
    }

    /// Minimal element of `αK`.
    pub fn coset_rep(&self, alpha: Element, k: &Subgroup) -> Element {
        k.iter().map(|x| self.mul(alpha, x)).min().expect("subgroups are nonempty")
    }

    /// Canonical representatives of the left cosets `gK`, ascending.
    pub fn coset_reps(&self, k: &Subgroup) -> Vec<Element> {
        let reps: BTreeSet<Element> = self.elements().map(|g| self.coset_rep(g, k)).collect();
        reps.into_iter().collect()
    }

    pub fn is_normal(&self, n: &Subgroup) -> Result<(), GroupError> {
        match self.elements().find(|&g| self.conjugate_subgroup(g, n) != *n) {
            Some(element) => Err(GroupError::NotNormal { element }),
            None => Ok(()),
        }
    }

    /// `{g : g H g⁻¹ = H}`
    pub fn normalizer(&self, h: &Subgroup) -> Subgroup {
        Subgroup::from_sorted(
            self.elements().filter(|&g| self.conjugate_subgroup(g, h) == *h).collect(),
        )
    }

    /// The quotient `G/N` together with the canonical projection. Cosets are
    /// indexed in ascending order of their minimal representatives, so the
    /// identity coset is index 0 and carries the identity's label.
    pub fn quotient(self: &Arc<Self>, n: &Subgroup) -> Result<(Arc<FiniteGroup>, GroupHom), GroupError> {
        self.is_normal(n)?;
        let reps = self.coset_reps(n);
        let index: HashMap<Element, usize> = reps.iter().enumerate().map(|(i, &r)| (r, i)).collect();
        let class = |g: Element| index[&self.coset_rep(g, n)];
        let table = reps
            .iter()
            .map(|&a| reps.iter().map(|&b| class(self.mul(a, b))).collect())
            .collect();
        let labels = reps.iter().map(|&r| self.label(r).to_string()).collect();
        let quotient = Arc::new(FiniteGroup::from_table_with_cap(table, Some(labels), self.order)?);
        let map = self.elements().map(class).collect();
        let projection = GroupHom::new(self.clone(), quotient.clone(), map)?;
        Ok((quotient, projection))
    }
}

/// A subgroup as a strictly increasing element list containing 0.
///
/// Subgroups do not carry their parent group; operations that need the
/// multiplication live on [`FiniteGroup`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Subgroup(Arc<[Element]>);

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &*self.0)
    }
}

impl Subgroup {
    fn from_sorted(elements: Vec<Element>) -> Self {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        debug_assert_eq!(elements.first(), Some(&IDENTITY));
        Subgroup(elements.into())
    }

    pub fn trivial() -> Self {
        Subgroup(vec![IDENTITY].into())
    }

    pub fn elements(&self) -> &[Element] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = Element> + '_ {
        self.0.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Always false; subgroups contain the identity.
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.0.len() == 1
    }

    pub fn contains(&self, a: Element) -> bool {
        self.0.binary_search(&a).is_ok()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.iter().all(|a| other.contains(a))
    }
}

/// A left coset `αK` in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Coset {
    pub subgroup: Subgroup,
    pub representative: Element,
}

/// A verified group homomorphism.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupHom {
    source: Arc<FiniteGroup>,
    target: Arc<FiniteGroup>,
    map: Vec<Element>,
}

impl fmt::Debug for GroupHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupHom({:?})", self.map)
    }
}

impl GroupHom {
    pub fn new(
        source: Arc<FiniteGroup>,
        target: Arc<FiniteGroup>,
        map: Vec<Element>,
    ) -> Result<Self, GroupError> {
        if map.len() != source.order() {
            return Err(GroupError::BadHomData(format!(
                "map has {} entries for a group of order {}",
                map.len(),
                source.order()
            )));
        }
        if let Some(&bad) = map.iter().find(|&&y| y >= target.order()) {
            return Err(GroupError::ElementOutOfRange(bad));
        }
        for a in source.elements() {
            for b in source.elements() {
                if map[source.mul(a, b)] != target.mul(map[a], map[b]) {
                    return Err(GroupError::NotAHomomorphism { a, b });
                }
            }
        }
        Ok(GroupHom { source, target, map })
    }

    pub fn identity(group: Arc<FiniteGroup>) -> Self {
        let map = group.elements().collect();
        GroupHom { source: group.clone(), target: group, map }
    }

    /// The homomorphism to the trivial group.
    pub fn to_trivial(group: Arc<FiniteGroup>) -> Self {
        let map = vec![IDENTITY; group.order()];
        GroupHom { source: group, target: Arc::new(FiniteGroup::trivial()), map }
    }

    /// Extends images of generators multiplicatively and validates the result.
    pub fn from_generator_images(
        source: Arc<FiniteGroup>,
        target: Arc<FiniteGroup>,
        images: &[(Element, Element)],
    ) -> Result<Self, GroupError> {
        for &(a, b) in images {
            source.check(a)?;
            target.check(b)?;
        }
        let mut map: Vec<Option<Element>> = vec![None; source.order()];
        map[IDENTITY] = Some(IDENTITY);
        let mut queue = VecDeque::from([IDENTITY]);
        while let Some(x) = queue.pop_front() {
            for &(s, t) in images {
                let y = source.mul(x, s);
                let image = target.mul(map[x].expect("queued elements are mapped"), t);
                match map[y] {
                    Some(existing) if existing != image => {
                        return Err(GroupError::NotAHomomorphism { a: x, b: s })
                    }
                    Some(_) => {}
                    None => {
                        map[y] = Some(image);
                        queue.push_back(y);
                    }
                }
            }
        }
        let map = map
            .into_iter()
            .enumerate()
            .map(|(a, m)| {
                m.ok_or_else(|| {
                    GroupError::BadHomData(format!(
                        "element {} is not generated by the given elements",
                        source.label(a)
                    ))
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(source, target, map)
    }

    pub fn source(&self) -> &Arc<FiniteGroup> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteGroup> {
        &self.target
    }

    #[inline]
    pub fn apply(&self, a: Element) -> Element {
        self.map[a]
    }

    pub fn as_slice(&self) -> &[Element] {
        &self.map
    }

    /// `φ(H)` in canonical form.
    pub fn image(&self, h: &Subgroup) -> Subgroup {
        let set: BTreeSet<Element> = h.iter().map(|a| self.map[a]).collect();
        Subgroup::from_sorted(set.into_iter().collect())
    }

    pub fn kernel(&self) -> Subgroup {
        Subgroup::from_sorted(self.source.elements().filter(|&a| self.map[a] == IDENTITY).collect())
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().is_trivial()
    }

    /// `other ∘ self`
    pub fn then(&self, other: &GroupHom) -> Result<GroupHom, GroupError> {
        if self.target != other.source {
            return Err(GroupError::BadHomData("codomain and domain differ".into()));
        }
        Ok(GroupHom {
            source: self.source.clone(),
            target: other.target.clone(),
            map: self.map.iter().map(|&a| other.map[a]).collect(),
        })
    }

    /// Preimage of a single element under an injective map.
    pub fn preimage_of(&self, b: Element) -> Option<Element> {
        self.map.iter().position(|&a| a == b)
    }
}

/// Builds an image list from cycle notation over `0..degree`.
pub fn permutation_from_cycles(cycles: &[Vec<usize>], degree: usize) -> Result<Vec<usize>, GroupError> {
    let mut perm: Vec<usize> = (0..degree).collect();
    let mut moved = HashSet::new();
    for cycle in cycles {
        for (i, &p) in cycle.iter().enumerate() {
            if p >= degree || !moved.insert(p) {
                return Err(GroupError::BadPermutation(format!("point {p} repeated or out of range")));
            }
            perm[p] = cycle[(i + 1) % cycle.len()];
        }
    }
    Ok(perm)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2() -> FiniteGroup {
        FiniteGroup::from_table(vec![vec![0, 1], vec![1, 0]], None).unwrap()
    }

    pub(crate) fn s3() -> FiniteGroup {
        FiniteGroup::from_permutations(&[
            ("r".into(), vec![1, 2, 0]),
            ("s".into(), vec![1, 0, 2]),
        ])
        .unwrap()
    }

    fn brute_force_subgroups(g: &FiniteGroup) -> Vec<Vec<Element>> {
        let n = g.order();
        let mut out = Vec::new();
        for mask in 0u64..(1 << n) {
            let set: Vec<Element> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            if !set.contains(&0) {
                continue;
            }
            let closed = set
                .iter()
                .all(|&a| set.iter().all(|&b| set.contains(&g.mul(a, b))));
            if closed {
                out.push(set);
            }
        }
        out.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        out
    }

    #[test]
    fn trivial_table_is_a_group() {
        let g = FiniteGroup::from_table(vec![vec![0]], None).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g, FiniteGroup { labels: vec!["0".into()], ..FiniteGroup::trivial() });
    }

    #[test]
    fn z2_table_is_a_group() {
        let g = z2();
        assert_eq!(g.order(), 2);
        assert_eq!(g.inv(1), 1);
    }

    #[test]
    fn missing_inverse_is_reported() {
        let err = FiniteGroup::from_table(vec![vec![0, 1], vec![1, 1]], None).unwrap_err();
        assert_eq!(err, GroupError::NoInverse(1));
        assert!(err.to_string().starts_with("NoInverse"));
    }

    #[test]
    fn non_associative_loop_is_rejected() {
        // a Latin square with identity 0 that is not associative
        let table = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let err = FiniteGroup::from_table(table, None).unwrap_err();
        assert!(matches!(err, GroupError::NotAssociative(..)), "{err:?}");
    }

    #[test]
    fn identity_is_relabeled_to_zero() {
        // Z/2 with the identity stored at index 1
        let g = FiniteGroup::from_table(
            vec![vec![1, 0], vec![0, 1]],
            Some(vec!["t".into(), "e".into()]),
        )
        .unwrap();
        assert_eq!(g.label(0), "e");
        assert_eq!(g.label(1), "t");
        assert_eq!(g.mul(1, 1), 0);
    }

    #[test]
    fn no_identity_and_range_errors() {
        let err = FiniteGroup::from_table(vec![vec![1, 0], vec![1, 0]], None).unwrap_err();
        assert_eq!(err, GroupError::NoIdentity);
        let err = FiniteGroup::from_table(vec![vec![0, 2], vec![1, 0]], None).unwrap_err();
        assert!(matches!(err, GroupError::EntryOutOfRange { .. }));
        let err = FiniteGroup::from_table_with_cap(vec![vec![0, 1], vec![1, 0]], None, 1).unwrap_err();
        assert!(matches!(err, GroupError::TooLarge { .. }));
    }

    #[test]
    fn subgroups_of_small_groups() {
        let z2 = z2();
        assert_eq!(
            z2.list_subgroups().iter().map(|h| h.elements().to_vec()).collect::<Vec<_>>(),
            vec![vec![0], vec![0, 1]]
        );
        let z4 = FiniteGroup::cyclic(4, None).unwrap();
        assert_eq!(
            z4.list_subgroups().iter().map(|h| h.elements().to_vec()).collect::<Vec<_>>(),
            vec![vec![0], vec![0, 2], vec![0, 1, 2, 3]]
        );
        let s3 = s3();
        let subs = s3.list_subgroups();
        let sizes: Vec<usize> = subs.iter().map(Subgroup::len).collect();
        assert_eq!(sizes, vec![1, 2, 2, 2, 3, 6]);
    }

    #[test]
    fn subgroup_listing_matches_subset_enumeration() {
        let groups = [
            z2(),
            FiniteGroup::cyclic(4, None).unwrap(),
            FiniteGroup::cyclic(6, None).unwrap(),
            s3(),
            FiniteGroup::from_permutations(&[
                ("r".into(), vec![1, 2, 3, 0]),
                ("s".into(), vec![0, 3, 2, 1]),
            ])
            .unwrap(),
        ];
        for g in &groups {
            let listed: Vec<Vec<Element>> =
                g.list_subgroups().iter().map(|h| h.elements().to_vec()).collect();
            assert_eq!(listed, brute_force_subgroups(g), "{g:?}");
        }
    }

    #[test]
    fn conjugation_examples() {
        let s3 = s3();
        let subs = s3.list_subgroups();
        let order_two = &subs[1];
        let r = s3.element_by_label("r").unwrap();
        assert_eq!(s3.conjugate_subgroup(IDENTITY, order_two), *order_two);
        let moved = s3.conjugate_subgroup(r, order_two);
        assert_ne!(moved, *order_two);
        assert_eq!(moved.len(), 2);

        let z4 = FiniteGroup::cyclic(4, None).unwrap();
        let h = z4.subgroup([0, 2]).unwrap();
        for g in z4.elements() {
            assert_eq!(z4.conjugate_subgroup(g, &h), h);
        }
    }

    #[test]
    fn conjugation_is_an_action() {
        let s3 = s3();
        for h in s3.list_subgroups() {
            for a in s3.elements() {
                for b in s3.elements() {
                    assert_eq!(
                        s3.conjugate_subgroup(s3.mul(a, b), &h),
                        s3.conjugate_subgroup(a, &s3.conjugate_subgroup(b, &h))
                    );
                }
            }
        }
    }

    #[test]
    fn canonical_cosets() {
        let z4 = FiniteGroup::cyclic(4, None).unwrap();
        let k = z4.subgroup([0, 2]).unwrap();
        assert_eq!(z4.canonical_coset(2, &k).representative, 0);
        assert_eq!(z4.canonical_coset(3, &k).representative, 1);
        let z2 = z2();
        assert_eq!(z2.canonical_coset(1, &Subgroup::trivial()).representative, 1);
    }

    #[test]
    fn coset_equality_matches_membership() {
        let groups = [s3(), FiniteGroup::cyclic(12, None).unwrap()];
        for g in &groups {
            for k in g.list_subgroups() {
                for a in g.elements() {
                    for b in g.elements() {
                        let same = g.canonical_coset(a, &k) == g.canonical_coset(b, &k);
                        assert_eq!(same, k.contains(g.mul(g.inv(a), b)));
                    }
                }
            }
        }
    }

    #[test]
    fn hom_images() {
        let z4 = Arc::new(FiniteGroup::cyclic(4, None).unwrap());
        let z2 = Arc::new(z2());
        let h = z4.subgroup([0, 2]).unwrap();
        assert_eq!(GroupHom::identity(z4.clone()).image(&h), h);
        let proj = GroupHom::new(z4.clone(), z2.clone(), vec![0, 1, 0, 1]).unwrap();
        assert_eq!(proj.image(&h), Subgroup::trivial());
        let incl = GroupHom::new(z2.clone(), z4.clone(), vec![0, 2]).unwrap();
        assert_eq!(incl.image(&z2.whole()), h);
        let err = GroupHom::new(z2, z4, vec![0, 1]).unwrap_err();
        assert!(matches!(err, GroupError::NotAHomomorphism { .. }));
        assert!(err.to_string().starts_with("NotAHomomorphism"));
    }

    #[test]
    fn homs_from_generators() {
        let z4 = Arc::new(FiniteGroup::cyclic(4, None).unwrap());
        let z2 = Arc::new(z2());
        let proj = GroupHom::from_generator_images(z4.clone(), z2.clone(), &[(1, 1)]).unwrap();
        assert_eq!(proj.as_slice(), &[0, 1, 0, 1]);
        assert!(GroupHom::from_generator_images(z2, z4, &[(1, 1)]).is_err());
    }

    #[test]
    fn quotients() {
        let z4 = Arc::new(FiniteGroup::cyclic(4, None).unwrap());
        let n = z4.subgroup([0, 2]).unwrap();
        let (q, p) = z4.quotient(&n).unwrap();
        assert_eq!(q.order(), 2);
        assert_eq!(p.as_slice(), &[0, 1, 0, 1]);
        let s3 = Arc::new(s3());
        let order_two = s3.list_subgroups()[1].clone();
        assert!(matches!(s3.quotient(&order_two), Err(GroupError::NotNormal { .. })));
    }

    #[test]
    fn permutations_close_to_groups() {
        let s3 = s3();
        assert_eq!(s3.order(), 6);
        assert!(!s3.is_abelian());
        assert_eq!(permutation_from_cycles(&[vec![0, 1, 2]], 4).unwrap(), vec![1, 2, 0, 3]);
        assert!(permutation_from_cycles(&[vec![0, 0]], 2).is_err());
    }
}
