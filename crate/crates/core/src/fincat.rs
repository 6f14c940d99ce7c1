//! Finite sets and maps, with just enough category theory for the pipeline:
//! finite products, equalizers, coequalizers, function spaces, and the
//! retract-of-a-power construction.
//!
//! A finite set is always the canonical index range `0..n`; labels are
//! presentation-only and never affect computation, equality of elements, or
//! signatures. A map is a full table `table[i] = f(i)`.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "FinSetRepr", into = "FinSetRepr")]
pub struct FinSet {
    size: usize,
    labels: Option<Vec<String>>,
}

#[derive(Serialize, Deserialize, Clone)]
struct FinSetRepr {
    size: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    labels: Option<Vec<String>>,
}

impl TryFrom<FinSetRepr> for FinSet {
    type Error = Error;
    fn try_from(r: FinSetRepr) -> Result<Self> {
        match r.labels {
            Some(labels) => FinSet::with_labels(r.size, labels),
            None => Ok(FinSet::new(r.size)),
        }
    }
}

impl From<FinSet> for FinSetRepr {
    fn from(s: FinSet) -> Self {
        FinSetRepr { size: s.size, labels: s.labels }
    }
}

impl FinSet {
    pub fn new(size: usize) -> Self {
        FinSet { size, labels: None }
    }

    pub fn with_labels(size: usize, labels: Vec<String>) -> Result<Self> {
        if labels.len() != size {
            return Err(Error::Invalid(format!(
                "{} labels for a set of size {}",
                labels.len(),
                size
            )));
        }
        let mut seen = std::collections::BTreeSet::new();
        for l in &labels {
            if !seen.insert(l) {
                return Err(Error::Invalid(format!("duplicate label {l:?}")));
            }
        }
        Ok(FinSet { size, labels: Some(labels) })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.size
    }

    pub fn label(&self, i: usize) -> Option<&str> {
        self.labels.as_ref().and_then(|ls| ls.get(i)).map(|s| s.as_str())
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "FinMapRepr", into = "FinMapRepr")]
pub struct FinMap {
    dom: FinSet,
    cod: FinSet,
    table: Vec<usize>,
}

#[derive(Serialize, Deserialize, Clone)]
struct FinMapRepr {
    dom: FinSet,
    cod: FinSet,
    table: Vec<usize>,
}

impl TryFrom<FinMapRepr> for FinMap {
    type Error = Error;
    fn try_from(r: FinMapRepr) -> Result<Self> {
        FinMap::new(r.dom, r.cod, r.table)
    }
}

impl From<FinMap> for FinMapRepr {
    fn from(m: FinMap) -> Self {
        FinMapRepr { dom: m.dom, cod: m.cod, table: m.table }
    }
}

impl FinMap {
    pub fn new(dom: FinSet, cod: FinSet, table: Vec<usize>) -> Result<Self> {
        if table.len() != dom.size() {
            return Err(Error::Structural(format!(
                "table length {} does not match domain size {}",
                table.len(),
                dom.size()
            )));
        }
        if let Some(&bad) = table.iter().find(|&&v| v >= cod.size()) {
            return Err(Error::Structural(format!(
                "table value {bad} outside codomain of size {}",
                cod.size()
            )));
        }
        Ok(FinMap { dom, cod, table })
    }

    pub fn identity(s: &FinSet) -> Self {
        FinMap { dom: s.clone(), cod: s.clone(), table: s.elements().collect() }
    }

    pub fn constant(dom: FinSet, cod: FinSet, value: usize) -> Result<Self> {
        let size = dom.size();
        FinMap::new(dom, cod, vec![value; size])
    }

    pub fn dom(&self) -> &FinSet {
        &self.dom
    }

    pub fn cod(&self) -> &FinSet {
        &self.cod
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn apply(&self, i: usize) -> usize {
        self.table[i]
    }

    /// Composition in diagram order: `self` first, `next` second.
    pub fn then(&self, next: &FinMap) -> Result<FinMap> {
        if self.cod.size() != next.dom.size() {
            return Err(Error::Signature(format!(
                "cannot compose: codomain size {} vs domain size {}",
                self.cod.size(),
                next.dom.size()
            )));
        }
        let table = self.table.iter().map(|&v| next.table[v]).collect();
        Ok(FinMap { dom: self.dom.clone(), cod: next.cod.clone(), table })
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.cod.size()];
        self.table.iter().all(|&v| !std::mem::replace(&mut seen[v], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.cod.size()];
        for &v in &self.table {
            seen[v] = true;
        }
        seen.into_iter().all(|b| b)
    }

    pub fn is_bijective(&self) -> bool {
        self.dom.size() == self.cod.size() && self.is_injective()
    }
}

/// Union-find with path compression; the engine's only quotient machinery.
#[derive(Debug, Clone)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
    merges: usize,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect(), merges: 0 }
    }

    pub fn find(&mut self, mut i: usize) -> usize {
        while self.parent[i] != i {
            self.parent[i] = self.parent[self.parent[i]];
            i = self.parent[i];
        }
        i
    }

    /// Returns true when two classes were actually merged.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        // Smaller root wins so the class representative is its least member.
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        self.merges += 1;
        true
    }

    pub fn merges(&self) -> usize {
        self.merges
    }
}

/// Finite product with projections. Element encoding is mixed-radix with
/// factor 0 most significant: the tuple (x_0, ..., x_{k-1}) has index
/// x_0 * s_1 * ... * s_{k-1} + x_1 * s_2 * ... + x_{k-1}.
pub fn product(factors: &[FinSet]) -> Result<(FinSet, Vec<FinMap>)> {
    let mut size: usize = 1;
    for f in factors {
        size = size
            .checked_mul(f.size())
            .ok_or_else(|| Error::BoundExceeded("product size overflows usize".into()))?;
    }
    let total = FinSet::new(size);
    let mut projections = Vec::with_capacity(factors.len());
    let mut stride_after: Vec<usize> = vec![1; factors.len()];
    for k in (0..factors.len()).rev() {
        if k + 1 < factors.len() {
            stride_after[k] = stride_after[k + 1] * factors[k + 1].size();
        }
    }
    for (k, f) in factors.iter().enumerate() {
        let table: Vec<usize> =
            (0..size).map(|i| (i / stride_after[k]) % f.size().max(1)).collect();
        projections.push(FinMap::new(total.clone(), f.clone(), table)?);
    }
    Ok((total, projections))
}

/// Equalizer of a parallel pair, with its inclusion. Elements are kept in
/// increasing order, so the result is canonical.
pub fn equalizer(f: &FinMap, g: &FinMap) -> Result<(FinSet, FinMap)> {
    check_parallel(f, g)?;
    let members: Vec<usize> = f.dom().elements().filter(|&x| f.apply(x) == g.apply(x)).collect();
    let eq = FinSet::new(members.len());
    let include = FinMap::new(eq.clone(), f.dom().clone(), members)?;
    Ok((eq, include))
}

/// Coequalizer of a parallel pair, with its quotient map. Classes are numbered
/// by their smallest member, in increasing order of that member.
pub fn coequalizer(f: &FinMap, g: &FinMap) -> Result<(FinSet, FinMap)> {
    check_parallel(f, g)?;
    let n = f.cod().size();
    let mut uf = UnionFind::new(n);
    for x in f.dom().elements() {
        uf.union(f.apply(x), g.apply(x));
    }
    let (q, quotient) = quotient_of(&mut uf, f.cod())?;
    debug_assert_eq!(q.size() + uf.merges(), n);
    Ok((q, quotient))
}

/// Extract the canonical quotient (classes numbered by least member) from a
/// union-find over `cod`.
pub(crate) fn quotient_of(uf: &mut UnionFind, cod: &FinSet) -> Result<(FinSet, FinMap)> {
    let n = cod.size();
    // With least-member union policy, every root is its class minimum.
    let mut class_index = vec![usize::MAX; n];
    let mut count = 0;
    for i in 0..n {
        if uf.find(i) == i {
            class_index[i] = count;
            count += 1;
        }
    }
    let q = FinSet::new(count);
    let table: Vec<usize> = (0..n).map(|i| class_index[uf.find(i)]).collect();
    let quotient = FinMap::new(cod.clone(), q.clone(), table)?;
    Ok((q, quotient))
}

fn check_parallel(f: &FinMap, g: &FinMap) -> Result<()> {
    if f.dom().size() != g.dom().size() || f.cod().size() != g.cod().size() {
        return Err(Error::Signature(format!(
            "not a parallel pair: {}->{} vs {}->{}",
            f.dom().size(),
            f.cod().size(),
            g.dom().size(),
            g.cod().size()
        )));
    }
    Ok(())
}

/// A finite set exhibited as a retract of a power of another: a section
/// `include: S -> T^n` and retraction `retract: T^n -> S` with
/// `retract . include = id`.
#[derive(Debug, Clone)]
pub struct PowerRetract {
    pub exponent: usize,
    pub include: FinMap,
    pub retract: FinMap,
}

impl PowerRetract {
    pub fn power(&self) -> &FinSet {
        self.include.cod()
    }
}

/// Exhibit `s` as a retract of `t^n` with `n` minimal (but at least 1).
/// The section sends element `i` to its base-|T| digit tuple (most significant
/// digit first); off-image elements retract to 0.
pub fn retract_of_power(s: &FinSet, t: &FinSet) -> Result<PowerRetract> {
    if s.is_empty() {
        return Err(Error::Invalid("the empty set is not a retract of any power".into()));
    }
    if t.size() < 2 {
        return Err(Error::Invalid(format!(
            "power base must have at least 2 elements, got {}",
            t.size()
        )));
    }
    let mut exponent = 1usize;
    let mut power: u128 = t.size() as u128;
    while power < s.size() as u128 {
        exponent += 1;
        power *= t.size() as u128;
        if exponent > 64 {
            return Err(Error::BoundExceeded("retract exponent exceeds 64".into()));
        }
    }
    let power_size = usize::try_from(power)
        .map_err(|_| Error::BoundExceeded("power size overflows usize".into()))?;
    let tn = FinSet::new(power_size);
    // Digit tuples encode to their own index, so the section is the inclusion
    // of the initial segment.
    let include = FinMap::new(s.clone(), tn.clone(), s.elements().collect())?;
    let retract_table: Vec<usize> =
        (0..power_size).map(|i| if i < s.size() { i } else { 0 }).collect();
    let retract = FinMap::new(tn, s.clone(), retract_table)?;
    Ok(PowerRetract { exponent, include, retract })
}

/// Check that `retract . include` is the identity. Signature mismatches are
/// errors, honest failures return `Ok(false)`.
pub fn verify_retract(include: &FinMap, retract: &FinMap) -> Result<bool> {
    if include.cod().size() != retract.dom().size()
        || include.dom().size() != retract.cod().size()
    {
        return Err(Error::Signature(format!(
            "retract signature mismatch: include {}->{}, retract {}->{}",
            include.dom().size(),
            include.cod().size(),
            retract.dom().size(),
            retract.cod().size()
        )));
    }
    Ok(include.dom().elements().all(|x| retract.apply(include.apply(x)) == x))
}

// ---------------------------------------------------------------------------
// Function spaces. One encoding used engine-wide: an element of Map(A, S) is
// the mixed-radix integer whose digit at position a (a in A, position 0 most
// significant) is the value at a.

/// The set of maps `dom -> cod`, as a finite set of encoded tables.
pub fn function_space(dom: &FinSet, cod: &FinSet) -> Result<FinSet> {
    Ok(FinSet::new(function_space_size(dom.size(), cod.size())?))
}

pub(crate) fn function_space_size(dom_size: usize, cod_size: usize) -> Result<usize> {
    let mut size: u128 = 1;
    for _ in 0..dom_size {
        size *= cod_size as u128;
        if size > usize::MAX as u128 {
            return Err(Error::BoundExceeded(format!(
                "function space {cod_size}^{dom_size} overflows usize"
            )));
        }
    }
    Ok(size as usize)
}

pub fn encode_function(values: &[usize], cod_size: usize) -> usize {
    let mut acc = 0usize;
    for &v in values {
        debug_assert!(v < cod_size.max(1));
        acc = acc * cod_size + v;
    }
    acc
}

pub fn decode_function(index: usize, dom_size: usize, cod_size: usize) -> Vec<usize> {
    let mut out = vec![0; dom_size];
    let mut rest = index;
    for slot in out.iter_mut().rev() {
        *slot = rest % cod_size.max(1);
        rest /= cod_size.max(1);
    }
    out
}

/// Precomposition `Map(B, S) -> Map(A, S)` along `f: A -> B`.
pub fn precomposition(f: &FinMap, s: &FinSet) -> Result<FinMap> {
    let from = function_space(f.cod(), s)?;
    let to = function_space(f.dom(), s)?;
    let mut table = Vec::with_capacity(from.size());
    for h in from.elements() {
        let values = decode_function(h, f.cod().size(), s.size());
        let composed: Vec<usize> = f.table().iter().map(|&b| values[b]).collect();
        table.push(encode_function(&composed, s.size()));
    }
    FinMap::new(from, to, table)
}

/// Postcomposition `Map(Y, S) -> Map(Y, S')` along `t: S -> S'`.
pub fn postcomposition(t: &FinMap, y: &FinSet) -> Result<FinMap> {
    let from = function_space(y, t.dom())?;
    let to = function_space(y, t.cod())?;
    let mut table = Vec::with_capacity(from.size());
    for h in from.elements() {
        let values = decode_function(h, y.size(), t.dom().size());
        let composed: Vec<usize> = values.iter().map(|&v| t.apply(v)).collect();
        table.push(encode_function(&composed, t.cod().size()));
    }
    FinMap::new(from, to, table)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(n: usize) -> FinSet {
        FinSet::new(n)
    }

    fn map(dom: usize, cod: usize, table: &[usize]) -> FinMap {
        FinMap::new(set(dom), set(cod), table.to_vec()).unwrap()
    }

    #[test]
    fn product_mixed_radix_frozen() {
        // {0,1} x {0,1,2}: factor 0 is the most significant digit.
        let (p, projs) = product(&[set(2), set(3)]).unwrap();
        assert_eq!(p.size(), 6);
        assert_eq!(projs[0].table(), &[0, 0, 0, 1, 1, 1]);
        assert_eq!(projs[1].table(), &[0, 1, 2, 0, 1, 2]);
    }

    #[test]
    fn product_corner_cases() {
        let (p, projs) = product(&[]).unwrap();
        assert_eq!(p.size(), 1);
        assert!(projs.is_empty());
        let (p, _) = product(&[set(4), set(0), set(3)]).unwrap();
        assert_eq!(p.size(), 0);
    }

    #[test]
    fn squaring_detects_subsingletons() {
        // Both projections X*X -> X are bijections exactly when |X| <= 1.
        for n in 0..=6 {
            let (_, projs) = product(&[set(n), set(n)]).unwrap();
            let both_bijective = projs.iter().all(|p| p.is_bijective());
            assert_eq!(both_bijective, n <= 1, "size {n}");
        }
    }

    #[test]
    fn equalizer_picks_agreeing_elements() {
        let f = map(2, 2, &[0, 1]);
        let g = map(2, 2, &[1, 1]);
        let (e, inc) = equalizer(&f, &g).unwrap();
        assert_eq!(e.size(), 1);
        assert_eq!(inc.table(), &[1]);
    }

    #[test]
    fn coequalizer_frozen_examples() {
        // 0~1 and 1~2 collapse everything.
        let f = map(2, 3, &[0, 1]);
        let g = map(2, 3, &[1, 2]);
        let (q, quot) = coequalizer(&f, &g).unwrap();
        assert_eq!(q.size(), 1);
        assert_eq!(quot.table(), &[0, 0, 0]);

        // Only 0~2: classes {0,2} and {1}, numbered by least member.
        let f = map(1, 3, &[0]);
        let g = map(1, 3, &[2]);
        let (q, quot) = coequalizer(&f, &g).unwrap();
        assert_eq!(q.size(), 2);
        assert_eq!(quot.table(), &[0, 1, 0]);
    }

    #[test]
    fn coequalizer_class_accounting() {
        // classes + merges = codomain size, on a batch of deterministic pairs.
        for (ft, gt, n) in [
            (vec![0usize, 1, 2], vec![1usize, 2, 3], 5usize),
            (vec![0, 0], vec![4, 4], 5),
            (vec![], vec![], 4),
            (vec![3, 3, 3], vec![3, 2, 1], 4),
        ] {
            let f = map(ft.len(), n, &ft);
            let g = map(gt.len(), n, &gt);
            let (q, quot) = coequalizer(&f, &g).unwrap();
            assert!(quot.is_surjective());
            let mut uf = UnionFind::new(n);
            for i in 0..ft.len() {
                uf.union(ft[i], gt[i]);
            }
            assert_eq!(q.size() + uf.merges(), n);
        }
    }

    #[test]
    fn retract_frozen_small() {
        // |S| = 3, |T| = 2: exponent 2, digits (0,0), (0,1), (1,0).
        let r = retract_of_power(&set(3), &set(2)).unwrap();
        assert_eq!(r.exponent, 2);
        assert_eq!(r.power().size(), 4);
        assert_eq!(r.include.table(), &[0, 1, 2]);
        assert_eq!(r.retract.table(), &[0, 1, 2, 0]);
        assert!(verify_retract(&r.include, &r.retract).unwrap());

        // |S| = 5, |T| = 3: 3^1 < 5 <= 3^2.
        let r = retract_of_power(&set(5), &set(3)).unwrap();
        assert_eq!(r.exponent, 2);
        assert!(verify_retract(&r.include, &r.retract).unwrap());

        // Singleton still gets exponent 1.
        let r = retract_of_power(&set(1), &set(2)).unwrap();
        assert_eq!(r.exponent, 1);
        assert!(verify_retract(&r.include, &r.retract).unwrap());
    }

    #[test]
    fn retract_rejects_bad_inputs() {
        assert!(retract_of_power(&set(0), &set(2)).is_err());
        assert!(retract_of_power(&set(3), &set(1)).is_err());
    }

    #[test]
    fn verify_retract_rejects_and_fails() {
        let include = map(1, 2, &[0]);
        let retract = map(2, 1, &[0, 0]);
        assert!(verify_retract(&include, &retract).unwrap());
        // Honest failure: a non-injective section can't be retracted.
        let squash = map(2, 2, &[0, 0]);
        let idish = map(2, 2, &[0, 1]);
        assert_eq!(verify_retract(&squash, &idish).unwrap(), false);
        // Signature mismatch is an error, not a false.
        let f = map(1, 3, &[0]);
        assert!(verify_retract(&f, &retract).is_err());
    }

    #[test]
    fn digit_tuples_match_product_encoding() {
        // The retract section's digit encoding and product()'s mixed radix
        // agree: projections of include(i) are the base-|T| digits of i.
        let s = set(7);
        let t = set(3);
        let r = retract_of_power(&s, &t).unwrap();
        let factors = vec![t.clone(); r.exponent];
        let (p, projs) = product(&factors).unwrap();
        assert_eq!(p.size(), r.power().size());
        for i in s.elements() {
            let enc = r.include.apply(i);
            let digits: Vec<usize> = projs.iter().map(|pr| pr.apply(enc)).collect();
            let mut acc = 0;
            for d in digits {
                acc = acc * t.size() + d;
            }
            assert_eq!(acc, i);
        }
    }

    #[test]
    fn function_space_encoding_roundtrip() {
        let dom = set(3);
        let cod = set(4);
        let fs = function_space(&dom, &cod).unwrap();
        assert_eq!(fs.size(), 64);
        for h in fs.elements() {
            let vals = decode_function(h, 3, 4);
            assert_eq!(encode_function(&vals, 4), h);
        }
        // Empty domain: exactly one map, even into the empty set.
        assert_eq!(function_space(&set(0), &set(0)).unwrap().size(), 1);
        // Nonempty domain into empty codomain: no maps.
        assert_eq!(function_space(&set(2), &set(0)).unwrap().size(), 0);
    }

    #[test]
    fn precomposition_is_contravariant() {
        let s = set(3);
        let f = map(2, 3, &[1, 2]); // A -> B
        let g = map(3, 2, &[0, 0, 1]); // B' -> A with B' = {0,1,2}
        let pf = precomposition(&f, &s).unwrap();
        let pg = precomposition(&g, &s).unwrap();
        let composite = g.then(&f).unwrap(); // B' -> B
        let direct = precomposition(&composite, &s).unwrap();
        let staged = pf.then(&pg).unwrap();
        assert_eq!(direct, staged);

        let idb = FinMap::identity(&set(3));
        let pid = precomposition(&idb, &s).unwrap();
        assert_eq!(pid, FinMap::identity(&function_space(&set(3), &s).unwrap()));
    }

    #[test]
    fn postcomposition_is_covariant() {
        let y = set(2);
        let t1 = map(3, 4, &[0, 2, 3]);
        let t2 = map(4, 2, &[0, 1, 1, 0]);
        let p1 = postcomposition(&t1, &y).unwrap();
        let p2 = postcomposition(&t2, &y).unwrap();
        let direct = postcomposition(&t1.then(&t2).unwrap(), &y).unwrap();
        assert_eq!(p1.then(&p2).unwrap(), direct);
    }

    #[test]
    fn labels_validated() {
        assert!(FinSet::with_labels(2, vec!["a".into(), "a".into()]).is_err());
        assert!(FinSet::with_labels(2, vec!["a".into()]).is_err());
        let s = FinSet::with_labels(2, vec!["x".into(), "y".into()]).unwrap();
        assert_eq!(s.label(1), Some("y"));
    }

    #[test]
    fn map_table_validated() {
        assert!(FinMap::new(set(2), set(2), vec![0]).is_err());
        assert!(FinMap::new(set(2), set(2), vec![0, 2]).is_err());
    }

    #[test]
    fn json_shapes() {
        let s = FinSet::with_labels(2, vec!["a".into(), "b".into()]).unwrap();
        let js = serde_json::to_string(&s).unwrap();
        assert_eq!(js, r#"{"size":2,"labels":["a","b"]}"#);
        let plain = serde_json::to_string(&set(3)).unwrap();
        assert_eq!(plain, r#"{"size":3}"#);
        let m = map(2, 3, &[2, 0]);
        let jm = serde_json::to_value(&m).unwrap();
        assert_eq!(jm["table"], serde_json::json!([2, 0]));
        let back: FinMap = serde_json::from_value(jm).unwrap();
        assert_eq!(back, m);
        // Bad tables are rejected at deserialization time.
        let bad: std::result::Result<FinMap, _> =
            serde_json::from_str(r#"{"dom":{"size":1},"cod":{"size":1},"table":[4]}"#);
        assert!(bad.is_err());
    }
}
