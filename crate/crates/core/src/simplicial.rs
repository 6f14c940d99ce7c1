//! Truncated simplicial finite sets.
//!
//! A `SimplicialSet` stores levels `K_0, ..., K_N` together with all face maps
//! `d_i: K_n -> K_{n-1}` and degeneracies `s_i: K_n -> K_{n+1}` inside the
//! truncation. The truncation `N >= 1` is part of the data; no level beyond it
//! exists, and consumers must respect the reliable-degree contracts (homology
//! up to `N-1`, fundamental group needs `N >= 2`).
//!
//! The simplicial identities checked by [`SimplicialSet::validate`], with
//! composition written left to right (apply the left map first):
//!
//! ```text
//! d_i . d_j = d_{j-1} . d_i          (i < j,  both sides K_n -> K_{n-2})
//! s_i . s_j = s_{j+1} . s_i          (i <= j, K_n -> K_{n+2}; right map applied last)
//! s_j then d_i = s_{j-1} after d_i   (i < j)
//! s_j then d_i = id                  (i = j or i = j+1)
//! s_j then d_i = s_j after d_{i-1}   (i > j+1)
//! ```

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cosimplicial::CosimplicialSet;
use crate::fincat::{self, FinMap, FinSet};
use crate::{Error, Result};

/// Power-set materialization refuses levels larger than this by default.
pub const DEFAULT_LEVEL_CAP: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SimplicialRepr", into = "SimplicialRepr")]
pub struct SimplicialSet {
    levels: Vec<FinSet>,
    /// `faces[n-1][i]`: the face `d_i: K_n -> K_{n-1}`, `1 <= n <= N`, `0 <= i <= n`.
    faces: Vec<Vec<FinMap>>,
    /// `degeneracies[n][i]`: the degeneracy `s_i: K_n -> K_{n+1}`, `0 <= n < N`, `0 <= i <= n`.
    degeneracies: Vec<Vec<FinMap>>,
}

/// One failed simplicial (or cosimplicial) identity: which identity, where,
/// and the first element witnessing the mismatch.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub identity: &'static str,
    pub n: usize,
    pub i: usize,
    pub j: usize,
    pub element: usize,
    pub lhs: usize,
    pub rhs: usize,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} at n={}, i={}, j={}: element {} maps to {} vs {}",
            self.identity, self.n, self.i, self.j, self.element, self.lhs, self.rhs
        )
    }
}

/// Compare two composites elementwise; record the first witness.
pub(crate) fn composite_violation(
    identity: &'static str,
    n: usize,
    i: usize,
    j: usize,
    lhs: &FinMap,
    rhs: &FinMap,
) -> Option<Violation> {
    debug_assert_eq!(lhs.dom().size(), rhs.dom().size());
    for x in lhs.dom().elements() {
        if lhs.apply(x) != rhs.apply(x) {
            return Some(Violation {
                identity,
                n,
                i,
                j,
                element: x,
                lhs: lhs.apply(x),
                rhs: rhs.apply(x),
            });
        }
    }
    None
}

impl SimplicialSet {
    /// Structural assembly: level/table shapes are enforced here (structural
    /// errors), the simplicial identities are checked by [`Self::validate`].
    pub fn from_parts(
        levels: Vec<FinSet>,
        faces: Vec<Vec<FinMap>>,
        degeneracies: Vec<Vec<FinMap>>,
    ) -> Result<Self> {
        if levels.len() < 2 {
            return Err(Error::Invalid(format!(
                "truncation must be at least 1, got {} level(s)",
                levels.len()
            )));
        }
        let n = levels.len() - 1;
        if faces.len() != n {
            return Err(Error::Structural(format!(
                "expected face families for levels 1..={n}, got {}",
                faces.len()
            )));
        }
        if degeneracies.len() != n {
            return Err(Error::Structural(format!(
                "expected degeneracy families for levels 0..{n}, got {}",
                degeneracies.len()
            )));
        }
        for (lv, fam) in faces.iter().enumerate() {
            let level = lv + 1;
            if fam.len() != level + 1 {
                return Err(Error::Structural(format!(
                    "level {level} needs {} faces, got {}",
                    level + 1,
                    fam.len()
                )));
            }
            for (i, f) in fam.iter().enumerate() {
                if f.dom().size() != levels[level].size() || f.cod().size() != levels[level - 1].size()
                {
                    return Err(Error::Structural(format!(
                        "face d_{i} at level {level} has shape {}->{}, expected {}->{}",
                        f.dom().size(),
                        f.cod().size(),
                        levels[level].size(),
                        levels[level - 1].size()
                    )));
                }
            }
        }
        for (level, fam) in degeneracies.iter().enumerate() {
            if fam.len() != level + 1 {
                return Err(Error::Structural(format!(
                    "level {level} needs {} degeneracies, got {}",
                    level + 1,
                    fam.len()
                )));
            }
            for (i, s) in fam.iter().enumerate() {
                if s.dom().size() != levels[level].size() || s.cod().size() != levels[level + 1].size()
                {
                    return Err(Error::Structural(format!(
                        "degeneracy s_{i} at level {level} has shape {}->{}, expected {}->{}",
                        s.dom().size(),
                        s.cod().size(),
                        levels[level].size(),
                        levels[level + 1].size()
                    )));
                }
            }
        }
        Ok(SimplicialSet { levels, faces, degeneracies })
    }

    pub fn truncation(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, n: usize) -> &FinSet {
        &self.levels[n]
    }

    pub fn levels(&self) -> &[FinSet] {
        &self.levels
    }

    /// `d_i: K_n -> K_{n-1}`.
    pub fn face(&self, n: usize, i: usize) -> &FinMap {
        &self.faces[n - 1][i]
    }

    /// `s_i: K_n -> K_{n+1}`.
    pub fn degeneracy(&self, n: usize, i: usize) -> &FinMap {
        &self.degeneracies[n][i]
    }

    /// Check every simplicial identity expressible inside the truncation.
    pub fn validate(&self) -> Vec<Violation> {
        let n_top = self.truncation();
        let mut out = Vec::new();
        // d_i . d_j = d_{j-1} . d_i for i < j, on K_n with n >= 2.
        for n in 2..=n_top {
            for j in 1..=n {
                for i in 0..j {
                    let lhs = self.face(n, j).then(self.face(n - 1, i)).unwrap();
                    let rhs = self.face(n, i).then(self.face(n - 1, j - 1)).unwrap();
                    out.extend(composite_violation("d_i d_j = d_{j-1} d_i", n, i, j, &lhs, &rhs));
                }
            }
        }
        // s_i . s_j = s_{j+1} . s_i for i <= j, from K_n with n <= N-2.
        for n in 0..=n_top.saturating_sub(2) {
            if n + 2 > n_top {
                break;
            }
            for j in 0..=n {
                for i in 0..=j {
                    let lhs = self.degeneracy(n, j).then(self.degeneracy(n + 1, i)).unwrap();
                    let rhs = self.degeneracy(n, i).then(self.degeneracy(n + 1, j + 1)).unwrap();
                    out.extend(composite_violation("s_i s_j = s_{j+1} s_i", n, i, j, &lhs, &rhs));
                }
            }
        }
        // Mixed identities: s_j then d_i, from K_n with n <= N-1.
        for n in 0..n_top {
            for j in 0..=n {
                for i in 0..=n + 1 {
                    let lhs = self.degeneracy(n, j).then(self.face(n + 1, i)).unwrap();
                    if i == j || i == j + 1 {
                        let id = FinMap::identity(&self.levels[n]);
                        out.extend(composite_violation("d_i s_j = id", n, i, j, &lhs, &id));
                    } else if i < j {
                        let rhs = self.face(n, i).then(self.degeneracy(n - 1, j - 1)).unwrap();
                        out.extend(composite_violation(
                            "d_i s_j = s_{j-1} d_i",
                            n,
                            i,
                            j,
                            &lhs,
                            &rhs,
                        ));
                    } else {
                        let rhs = self.face(n, i - 1).then(self.degeneracy(n - 1, j)).unwrap();
                        out.extend(composite_violation(
                            "d_i s_j = s_j d_{i-1}",
                            n,
                            i,
                            j,
                            &lhs,
                            &rhs,
                        ));
                    }
                }
            }
        }
        out
    }

    /// Indices of nondegenerate `n`-simplices (every vertex counts at n = 0).
    pub fn nondegenerate(&self, n: usize) -> Result<Vec<usize>> {
        if n > self.truncation() {
            return Err(Error::DegreeOutOfRange { degree: n, truncation: self.truncation() });
        }
        if n == 0 {
            return Ok(self.levels[0].elements().collect());
        }
        let mut degenerate = vec![false; self.levels[n].size()];
        for i in 0..n {
            let s = self.degeneracy(n - 1, i);
            for x in s.dom().elements() {
                degenerate[s.apply(x)] = true;
            }
        }
        Ok((0..self.levels[n].size()).filter(|&x| !degenerate[x]).collect())
    }

    /// Any vertex of the simplex `x` at level `n` (the iterated 0th face).
    pub fn vertex_of(&self, n: usize, x: usize) -> usize {
        let mut cur = x;
        for m in (1..=n).rev() {
            cur = self.face(m, 0).apply(cur);
        }
        cur
    }
}

/// Path components: the coequalizer of `d_0, d_1: K_1 => K_0`, classes
/// numbered by least vertex. Higher simplices cannot merge components.
pub fn pi0(k: &SimplicialSet) -> Result<(FinSet, FinMap)> {
    fincat::coequalizer(k.face(1, 0), k.face(1, 1))
}

/// The full subcomplex on the path component of `vertex`.
pub fn component_subcomplex(k: &SimplicialSet, vertex: usize) -> Result<SimplicialSet> {
    if vertex >= k.level(0).size() {
        return Err(Error::Invalid(format!(
            "basepoint {vertex} outside the {} vertices",
            k.level(0).size()
        )));
    }
    let (_, classmap) = pi0(k)?;
    let target = classmap.apply(vertex);
    let n_top = k.truncation();
    // Member lists and reindexing tables per level.
    let mut members: Vec<Vec<usize>> = Vec::with_capacity(n_top + 1);
    let mut reindex: Vec<BTreeMap<usize, usize>> = Vec::with_capacity(n_top + 1);
    for n in 0..=n_top {
        let mut mem = Vec::new();
        let mut re = BTreeMap::new();
        for x in k.level(n).elements() {
            if classmap.apply(k.vertex_of(n, x)) == target {
                re.insert(x, mem.len());
                mem.push(x);
            }
        }
        members.push(mem);
        reindex.push(re);
    }
    let levels: Vec<FinSet> = members.iter().map(|m| FinSet::new(m.len())).collect();
    let restrict = |n_from: usize, n_to: usize, f: &FinMap| -> Result<FinMap> {
        let table = members[n_from]
            .iter()
            .map(|&x| {
                *reindex[n_to]
                    .get(&f.apply(x))
                    .expect("structure maps preserve path components")
            })
            .collect();
        FinMap::new(levels[n_from].clone(), levels[n_to].clone(), table)
    };
    let mut faces = Vec::new();
    for n in 1..=n_top {
        let fam = (0..=n).map(|i| restrict(n, n - 1, k.face(n, i))).collect::<Result<Vec<_>>>()?;
        faces.push(fam);
    }
    let mut degeneracies = Vec::new();
    for n in 0..n_top {
        let fam =
            (0..=n).map(|i| restrict(n, n + 1, k.degeneracy(n, i))).collect::<Result<Vec<_>>>()?;
        degeneracies.push(fam);
    }
    SimplicialSet::from_parts(levels, faces, degeneracies)
}

// ---------------------------------------------------------------------------
// The power-set functor.

/// Preimage map on subsets: `P(f): P(B) -> P(A)` for `f: A -> B`, subsets
/// encoded as bitmasks (bit `i` = element `i`).
fn preimage_map(f: &FinMap) -> Result<FinMap> {
    let dom_bits = f.dom().size();
    let cod_bits = f.cod().size();
    let from = FinSet::new(1usize << cod_bits);
    let to = FinSet::new(1usize << dom_bits);
    let mut table = Vec::with_capacity(from.size());
    for mask in 0..from.size() {
        let mut out = 0usize;
        for a in 0..dom_bits {
            if (mask >> f.apply(a)) & 1 == 1 {
                out |= 1 << a;
            }
        }
        table.push(out);
    }
    FinMap::new(from, to, table)
}

/// Apply the power-set functor levelwise to a cosimplicial finite set:
/// `P(X)_n = P(X^n)` with faces/degeneracies the preimages of the
/// cofaces/codegeneracies. Levels above [`DEFAULT_LEVEL_CAP`] are refused.
pub fn powerset(x: &CosimplicialSet) -> Result<SimplicialSet> {
    powerset_with_cap(x, DEFAULT_LEVEL_CAP)
}

pub fn powerset_with_cap(x: &CosimplicialSet, cap: usize) -> Result<SimplicialSet> {
    let n_top = x.truncation();
    if cap >= usize::BITS as usize {
        return Err(Error::Invalid(format!("level cap {cap} exceeds the bitmask width")));
    }
    for n in 0..=n_top {
        let size = x.level(n).size();
        if size > cap {
            return Err(Error::CapExceeded { level: n, size, cap });
        }
    }
    let levels: Vec<FinSet> =
        (0..=n_top).map(|n| FinSet::new(1usize << x.level(n).size())).collect();
    let mut faces = Vec::new();
    for n in 1..=n_top {
        let fam =
            (0..=n).map(|i| preimage_map(x.coface(n, i))).collect::<Result<Vec<_>>>()?;
        faces.push(fam);
    }
    let mut degeneracies = Vec::new();
    for n in 0..n_top {
        let fam =
            (0..=n).map(|i| preimage_map(x.codegeneracy(n, i))).collect::<Result<Vec<_>>>()?;
        degeneracies.push(fam);
    }
    SimplicialSet::from_parts(levels, faces, degeneracies)
}

// ---------------------------------------------------------------------------
// Standard complexes.

/// The standard `k`-simplex truncated at `n`: level `m` is the set of
/// nondecreasing tuples `[m] -> [k]`, enumerated lexicographically.
pub fn standard_simplex(k: usize, n: usize) -> Result<SimplicialSet> {
    let tuples_at = |m: usize| -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = Vec::new();
        let mut cur = vec![0usize; m + 1];
        loop {
            out.push(cur.clone());
            // Next nondecreasing tuple in lexicographic order.
            let mut pos = m + 1;
            for idx in (0..=m).rev() {
                if cur[idx] < k {
                    pos = idx;
                    break;
                }
            }
            if pos == m + 1 {
                break;
            }
            let v = cur[pos] + 1;
            for slot in cur.iter_mut().skip(pos) {
                *slot = v;
            }
        }
        out
    };
    let mut level_tuples = Vec::with_capacity(n + 1);
    let mut index: Vec<BTreeMap<Vec<usize>, usize>> = Vec::with_capacity(n + 1);
    for m in 0..=n {
        let ts = tuples_at(m);
        let ix = ts.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
        level_tuples.push(ts);
        index.push(ix);
    }
    let levels: Vec<FinSet> = level_tuples.iter().map(|ts| FinSet::new(ts.len())).collect();
    let mut faces = Vec::new();
    for m in 1..=n {
        let mut fam = Vec::with_capacity(m + 1);
        for i in 0..=m {
            let table: Vec<usize> = level_tuples[m]
                .iter()
                .map(|t| {
                    let mut dropped = t.clone();
                    dropped.remove(i);
                    index[m - 1][&dropped]
                })
                .collect();
            fam.push(FinMap::new(levels[m].clone(), levels[m - 1].clone(), table)?);
        }
        faces.push(fam);
    }
    let mut degeneracies = Vec::new();
    for m in 0..n {
        let mut fam = Vec::with_capacity(m + 1);
        for i in 0..=m {
            let table: Vec<usize> = level_tuples[m]
                .iter()
                .map(|t| {
                    let mut dup = t.clone();
                    dup.insert(i, t[i]);
                    index[m + 1][&dup]
                })
                .collect();
            fam.push(FinMap::new(levels[m].clone(), levels[m + 1].clone(), table)?);
        }
        degeneracies.push(fam);
    }
    SimplicialSet::from_parts(levels, faces, degeneracies)
}

/// The discrete simplicial set on `m` points: every level is `m`, every
/// structure map the identity.
pub fn discrete(m: usize, n: usize) -> Result<SimplicialSet> {
    let set = FinSet::new(m);
    let levels = vec![set.clone(); n + 1];
    let faces = (1..=n).map(|lv| vec![FinMap::identity(&set); lv + 1]).collect();
    let degeneracies = (0..n).map(|lv| vec![FinMap::identity(&set); lv + 1]).collect();
    SimplicialSet::from_parts(levels, faces, degeneracies)
}

/// The minimal circle (an interval with both endpoints collapsed): one vertex,
/// one nondegenerate edge, level `m` has `m + 1` simplices. Element 0 of each
/// level is the collapsed basepoint simplex; element `j >= 1` stands for the
/// interval tuple with `j` leading zeros.
pub fn circle(n: usize) -> Result<SimplicialSet> {
    let levels: Vec<FinSet> = (0..=n).map(|m| FinSet::new(m + 1)).collect();
    let mut faces = Vec::new();
    for m in 1..=n {
        let mut fam = Vec::with_capacity(m + 1);
        for i in 0..=m {
            let table: Vec<usize> = (0..=m)
                .map(|j| {
                    if j == 0 {
                        0
                    } else if i < j {
                        if j - 1 == 0 {
                            0
                        } else {
                            j - 1
                        }
                    } else if j == m {
                        0
                    } else {
                        j
                    }
                })
                .collect();
            fam.push(FinMap::new(levels[m].clone(), levels[m - 1].clone(), table)?);
        }
        faces.push(fam);
    }
    let mut degeneracies = Vec::new();
    for m in 0..n {
        let mut fam = Vec::with_capacity(m + 1);
        for i in 0..=m {
            let table: Vec<usize> =
                (0..=m).map(|j| if j == 0 { 0 } else if i < j { j + 1 } else { j }).collect();
            fam.push(FinMap::new(levels[m].clone(), levels[m + 1].clone(), table)?);
        }
        degeneracies.push(fam);
    }
    SimplicialSet::from_parts(levels, faces, degeneracies)
}

/// Levelwise disjoint union; `a`'s simplices come first.
pub fn disjoint_union(a: &SimplicialSet, b: &SimplicialSet) -> Result<SimplicialSet> {
    if a.truncation() != b.truncation() {
        return Err(Error::Signature(format!(
            "disjoint union of truncations {} and {}",
            a.truncation(),
            b.truncation()
        )));
    }
    let n_top = a.truncation();
    let levels: Vec<FinSet> =
        (0..=n_top).map(|m| FinSet::new(a.level(m).size() + b.level(m).size())).collect();
    let combine = |m_from: usize, m_to: usize, fa: &FinMap, fb: &FinMap| -> Result<FinMap> {
        let offset_from = a.level(m_from).size();
        let offset_to = a.level(m_to).size();
        let table: Vec<usize> = (0..levels[m_from].size())
            .map(|x| {
                if x < offset_from {
                    fa.apply(x)
                } else {
                    offset_to + fb.apply(x - offset_from)
                }
            })
            .collect();
        FinMap::new(levels[m_from].clone(), levels[m_to].clone(), table)
    };
    let mut faces = Vec::new();
    for m in 1..=n_top {
        let fam = (0..=m)
            .map(|i| combine(m, m - 1, a.face(m, i), b.face(m, i)))
            .collect::<Result<Vec<_>>>()?;
        faces.push(fam);
    }
    let mut degeneracies = Vec::new();
    for m in 0..n_top {
        let fam = (0..=m)
            .map(|i| combine(m, m + 1, a.degeneracy(m, i), b.degeneracy(m, i)))
            .collect::<Result<Vec<_>>>()?;
        degeneracies.push(fam);
    }
    SimplicialSet::from_parts(levels, faces, degeneracies)
}

fn mixed_decode(mut idx: usize, orders: &[u32]) -> Vec<usize> {
    let mut out = vec![0usize; orders.len()];
    for k in (0..orders.len()).rev() {
        out[k] = idx % orders[k] as usize;
        idx /= orders[k] as usize;
    }
    out
}

fn mixed_encode(digits: &[usize], orders: &[u32]) -> usize {
    digits.iter().zip(orders).fold(0usize, |acc, (&d, &o)| acc * o as usize + d)
}

/// Nerve of the finite abelian group `Z/orders[0] x ... x Z/orders[k-1]`,
/// truncated at `n`: level `m` is the set of `m`-tuples of group elements,
/// inner faces multiply adjacent entries, outer faces drop them, degeneracies
/// insert the identity.
pub fn nerve_of_abelian_group(orders: &[u32], n: usize) -> Result<SimplicialSet> {
    if orders.iter().any(|&o| o == 0) {
        return Err(Error::Invalid("cyclic factor of order 0".into()));
    }
    let group_order: usize = orders.iter().try_fold(1usize, |acc, &o| {
        acc.checked_mul(o as usize)
    }).ok_or_else(|| Error::BoundExceeded("group order overflows usize".into()))?;
    let add = |a: usize, b: usize| -> usize {
        let da = mixed_decode(a, orders);
        let db = mixed_decode(b, orders);
        let sum: Vec<usize> = da
            .iter()
            .zip(&db)
            .zip(orders)
            .map(|((&x, &y), &o)| (x + y) % o as usize)
            .collect();
        mixed_encode(&sum, orders)
    };
    let level_size = |m: usize| -> Result<usize> {
        fincat::function_space_size(m, group_order)
    };
    let mut levels = Vec::with_capacity(n + 1);
    for m in 0..=n {
        levels.push(FinSet::new(level_size(m)?));
    }
    let decode = |idx: usize, m: usize| fincat::decode_function(idx, m, group_order);
    let encode = |t: &[usize]| fincat::encode_function(t, group_order);
    let mut faces = Vec::new();
    for m in 1..=n {
        let mut fam = Vec::with_capacity(m + 1);
        for i in 0..=m {
            let table: Vec<usize> = (0..levels[m].size())
                .map(|idx| {
                    let t = decode(idx, m);
                    let dropped: Vec<usize> = if i == 0 {
                        t[1..].to_vec()
                    } else if i == m {
                        t[..m - 1].to_vec()
                    } else {
                        let mut out = Vec::with_capacity(m - 1);
                        out.extend_from_slice(&t[..i - 1]);
                        out.push(add(t[i - 1], t[i]));
                        out.extend_from_slice(&t[i + 1..]);
                        out
                    };
                    encode(&dropped)
                })
                .collect();
            fam.push(FinMap::new(levels[m].clone(), levels[m - 1].clone(), table)?);
        }
        faces.push(fam);
    }
    let mut degeneracies = Vec::new();
    for m in 0..n {
        let mut fam = Vec::with_capacity(m + 1);
        for i in 0..=m {
            let table: Vec<usize> = (0..levels[m].size())
                .map(|idx| {
                    let t = decode(idx, m);
                    let mut ins = Vec::with_capacity(m + 1);
                    ins.extend_from_slice(&t[..i]);
                    ins.push(0);
                    ins.extend_from_slice(&t[i..]);
                    encode(&ins)
                })
                .collect();
            fam.push(FinMap::new(levels[m].clone(), levels[m + 1].clone(), table)?);
        }
        degeneracies.push(fam);
    }
    SimplicialSet::from_parts(levels, faces, degeneracies)
}

// ---------------------------------------------------------------------------
// Wire format.

#[derive(Serialize, Deserialize, Clone)]
struct SimplicialRepr {
    truncation: usize,
    levels: Vec<usize>,
    /// Keyed by "n,i": the face `d_i` out of level `n`.
    faces: BTreeMap<String, Vec<usize>>,
    /// Keyed by "n,i": the degeneracy `s_i` out of level `n`.
    degeneracies: BTreeMap<String, Vec<usize>>,
}

pub(crate) fn parse_key(key: &str) -> Result<(usize, usize)> {
    let (n, i) = key
        .split_once(',')
        .ok_or_else(|| Error::Structural(format!("malformed map key {key:?}")))?;
    let n = n.trim().parse::<usize>().map_err(|_| Error::Structural(format!("bad level in key {key:?}")))?;
    let i = i.trim().parse::<usize>().map_err(|_| Error::Structural(format!("bad index in key {key:?}")))?;
    Ok((n, i))
}

impl TryFrom<SimplicialRepr> for SimplicialSet {
    type Error = Error;
    fn try_from(r: SimplicialRepr) -> Result<Self> {
        if r.levels.len() != r.truncation + 1 {
            return Err(Error::Structural(format!(
                "{} levels for truncation {}",
                r.levels.len(),
                r.truncation
            )));
        }
        let levels: Vec<FinSet> = r.levels.iter().map(|&s| FinSet::new(s)).collect();
        let mut face_tables: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for (k, t) in &r.faces {
            let (n, i) = parse_key(k)?;
            face_tables.insert((n, i), t.clone());
        }
        let mut degen_tables: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for (k, t) in &r.degeneracies {
            let (n, i) = parse_key(k)?;
            degen_tables.insert((n, i), t.clone());
        }
        let mut faces = Vec::new();
        for n in 1..=r.truncation {
            let mut fam = Vec::with_capacity(n + 1);
            for i in 0..=n {
                let t = face_tables.remove(&(n, i)).ok_or_else(|| {
                    Error::Structural(format!("missing face table {n},{i}"))
                })?;
                fam.push(FinMap::new(levels[n].clone(), levels[n - 1].clone(), t)?);
            }
            faces.push(fam);
        }
        let mut degeneracies = Vec::new();
        for n in 0..r.truncation {
            let mut fam = Vec::with_capacity(n + 1);
            for i in 0..=n {
                let t = degen_tables.remove(&(n, i)).ok_or_else(|| {
                    Error::Structural(format!("missing degeneracy table {n},{i}"))
                })?;
                fam.push(FinMap::new(levels[n].clone(), levels[n + 1].clone(), t)?);
            }
            degeneracies.push(fam);
        }
        if let Some(((n, i), _)) = face_tables.into_iter().next() {
            return Err(Error::Structural(format!("unexpected face table {n},{i}")));
        }
        if let Some(((n, i), _)) = degen_tables.into_iter().next() {
            return Err(Error::Structural(format!("unexpected degeneracy table {n},{i}")));
        }
        SimplicialSet::from_parts(levels, faces, degeneracies)
    }
}

impl From<SimplicialSet> for SimplicialRepr {
    fn from(k: SimplicialSet) -> Self {
        let truncation = k.truncation();
        let levels = k.levels.iter().map(|l| l.size()).collect();
        let mut faces = BTreeMap::new();
        for n in 1..=truncation {
            for i in 0..=n {
                faces.insert(format!("{n},{i}"), k.face(n, i).table().to_vec());
            }
        }
        let mut degeneracies = BTreeMap::new();
        for n in 0..truncation {
            for i in 0..=n {
                degeneracies.insert(format!("{n},{i}"), k.degeneracy(n, i).table().to_vec());
            }
        }
        SimplicialRepr { truncation, levels, faces, degeneracies }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_simplices_validate() {
        let d1 = standard_simplex(1, 4).unwrap();
        let sizes: Vec<usize> = d1.levels().iter().map(|l| l.size()).collect();
        assert_eq!(sizes, vec![2, 3, 4, 5, 6]);
        assert!(d1.validate().is_empty());
        let nondeg: Vec<usize> = (0..=4).map(|n| d1.nondegenerate(n).unwrap().len()).collect();
        assert_eq!(nondeg, vec![2, 1, 0, 0, 0]);

        let d2 = standard_simplex(2, 3).unwrap();
        let sizes: Vec<usize> = d2.levels().iter().map(|l| l.size()).collect();
        assert_eq!(sizes, vec![3, 6, 10, 15]);
        assert!(d2.validate().is_empty());
        let nondeg: Vec<usize> = (0..=3).map(|n| d2.nondegenerate(n).unwrap().len()).collect();
        assert_eq!(nondeg, vec![3, 3, 1, 0]);
    }

    #[test]
    fn circle_has_minimal_cells() {
        let s1 = circle(4).unwrap();
        let sizes: Vec<usize> = s1.levels().iter().map(|l| l.size()).collect();
        assert_eq!(sizes, vec![1, 2, 3, 4, 5]);
        assert!(s1.validate().is_empty());
        let nondeg: Vec<usize> = (0..=4).map(|n| s1.nondegenerate(n).unwrap().len()).collect();
        assert_eq!(nondeg, vec![1, 1, 0, 0, 0]);
        let (comps, _) = pi0(&s1).unwrap();
        assert_eq!(comps.size(), 1);
    }

    #[test]
    fn discrete_components() {
        let k = discrete(4, 2).unwrap();
        assert!(k.validate().is_empty());
        let (comps, classmap) = pi0(&k).unwrap();
        assert_eq!(comps.size(), 4);
        assert_eq!(classmap.table(), &[0, 1, 2, 3]);
        for n in 1..=2 {
            assert!(k.nondegenerate(n).unwrap().is_empty());
        }
    }

    #[test]
    fn disjoint_union_counts() {
        let s1 = circle(3).unwrap();
        let pt = discrete(1, 3).unwrap();
        let u = disjoint_union(&s1, &pt).unwrap();
        assert!(u.validate().is_empty());
        let sizes: Vec<usize> = u.levels().iter().map(|l| l.size()).collect();
        assert_eq!(sizes, vec![2, 3, 4, 5]);
        let (comps, _) = pi0(&u).unwrap();
        assert_eq!(comps.size(), 2);
    }

    #[test]
    fn nerve_z2_frozen() {
        let k = nerve_of_abelian_group(&[2], 3).unwrap();
        let sizes: Vec<usize> = k.levels().iter().map(|l| l.size()).collect();
        assert_eq!(sizes, vec![1, 2, 4, 8]);
        assert!(k.validate().is_empty());
        // The unique nondegenerate 2-simplex is (1,1), encoded 1*2+1 = 3.
        assert_eq!(k.nondegenerate(2).unwrap(), vec![3]);
        let (comps, _) = pi0(&k).unwrap();
        assert_eq!(comps.size(), 1);
    }

    #[test]
    fn nerve_z3_nondegenerate_cells() {
        let k = nerve_of_abelian_group(&[3], 2).unwrap();
        assert!(k.validate().is_empty());
        assert_eq!(k.nondegenerate(1).unwrap(), vec![1, 2]);
        // (1,1), (1,2), (2,1), (2,2) encode to 4, 5, 7, 8.
        assert_eq!(k.nondegenerate(2).unwrap(), vec![4, 5, 7, 8]);
    }

    #[test]
    fn nerve_product_group() {
        let k = nerve_of_abelian_group(&[2, 2], 2).unwrap();
        let sizes: Vec<usize> = k.levels().iter().map(|l| l.size()).collect();
        assert_eq!(sizes, vec![1, 4, 16]);
        assert!(k.validate().is_empty());
    }

    #[test]
    fn validator_catches_corruption() {
        let good = standard_simplex(1, 2).unwrap();
        assert!(good.validate().is_empty());
        let mut broken = good.clone();
        // Corrupt d_0 at level 1: swap its two nontrivial values.
        let f = broken.faces[0][0].clone();
        let mut t = f.table().to_vec();
        t.swap(0, 1);
        broken.faces[0][0] =
            FinMap::new(f.dom().clone(), f.cod().clone(), t).unwrap();
        let violations = broken.validate();
        assert!(!violations.is_empty());
        assert!(violations.iter().any(|v| v.identity.contains("d_i s_j")));
    }

    #[test]
    fn component_extraction() {
        let u = disjoint_union(&circle(3).unwrap(), &discrete(2, 3).unwrap()).unwrap();
        let comp = component_subcomplex(&u, 0).unwrap();
        // The circle's component: level sizes 1, 2, 3, 4.
        let sizes: Vec<usize> = comp.levels().iter().map(|l| l.size()).collect();
        assert_eq!(sizes, vec![1, 2, 3, 4]);
        assert!(comp.validate().is_empty());
        let point = component_subcomplex(&u, 1).unwrap();
        let sizes: Vec<usize> = point.levels().iter().map(|l| l.size()).collect();
        assert_eq!(sizes, vec![1, 1, 1, 1]);
    }

    #[test]
    fn serde_roundtrip() {
        let k = nerve_of_abelian_group(&[2], 2).unwrap();
        let js = serde_json::to_string(&k).unwrap();
        let back: SimplicialSet = serde_json::from_str(&js).unwrap();
        assert_eq!(back, k);
        assert!(js.contains("\"faces\""));
        assert!(js.contains("\"degeneracies\""));
    }
}
