//! Endomorphisms and automorphisms of F_n given by generator images.
//!
//! Automorphism verification constructs an explicit inverse by Nielsen
//! reduction of the image tuple, so verified maps carry a certificate that
//! later operations can rely on without re-checking.

use super::words::{CyclicWord, Letter, Word};
use crate::error::{Error, Result};
use crate::freegroup::stallings::SubgroupGraph;
use serde::{Deserialize, Serialize};
use std::fmt;

/// A map F_n -> F_n determined by generator images.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FreeMap {
    rank: u8,
    images: Vec<Word>,
    /// Inverse images, present exactly for verified automorphisms.
    inverse: Option<Vec<Word>>,
}

impl fmt::Debug for FreeMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FreeMap[")?;
        for (i, w) in self.images.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{} -> {}", Word::generator(self.rank(), (i + 1) as Letter), w)?;
        }
        write!(f, "]")
    }
}

impl FreeMap {
    /// An endomorphism, not yet checked for invertibility.
    pub fn endomorphism(rank: usize, images: Vec<Word>) -> Result<FreeMap> {
        if images.len() != rank {
            return Err(Error::RankMismatch(images.len(), rank));
        }
        for w in &images {
            if w.rank() != rank {
                return Err(Error::RankMismatch(w.rank(), rank));
            }
        }
        Ok(FreeMap {
            rank: rank as u8,
            images,
            inverse: None,
        })
    }

    /// Builds and verifies an automorphism; fails with a witness generator
    /// outside the image subgroup otherwise.
    pub fn automorphism(rank: usize, images: Vec<Word>) -> Result<FreeMap> {
        let f = FreeMap::endomorphism(rank, images)?;
        f.verified()
    }

    pub fn identity(rank: usize) -> FreeMap {
        let images = (1..=rank)
            .map(|i| Word::generator(rank, i as Letter))
            .collect();
        FreeMap {
            rank: rank as u8,
            images,
            inverse: Some(
                (1..=rank)
                    .map(|i| Word::generator(rank, i as Letter))
                    .collect(),
            ),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank as usize
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn is_verified(&self) -> bool {
        self.inverse.is_some()
    }

    pub fn image_of(&self, gen: Letter) -> Word {
        if gen > 0 {
            self.images[gen as usize - 1].clone()
        } else {
            self.images[(-gen) as usize - 1].inverse()
        }
    }

    pub fn apply(&self, w: &Word) -> Word {
        let mut out = Word::identity(self.rank());
        for &l in w.letters() {
            out = out.mul(&self.image_of(l));
        }
        out
    }

    pub fn apply_cyclic(&self, w: &CyclicWord) -> CyclicWord {
        let (c, _) = super::words::cyclic_reduce(&self.apply(&w.as_word()));
        c
    }

    /// Composition `self . other` (apply `other` first).
    pub fn compose(&self, other: &FreeMap) -> FreeMap {
        debug_assert_eq!(self.rank, other.rank);
        let images = other.images.iter().map(|w| self.apply(w)).collect();
        let inverse = if self.inverse.is_some() && other.inverse.is_some() {
            let self_inv = self.inverse_map();
            let other_inv = other.inverse_map();
            Some(
                (1..=self.rank())
                    .map(|i| other_inv.apply(&self_inv.image_of(i as Letter)))
                    .collect(),
            )
        } else {
            None
        };
        FreeMap {
            rank: self.rank,
            images,
            inverse,
        }
    }

    /// The inverse of a verified automorphism.
    pub fn inverse_map(&self) -> FreeMap {
        let inv = self
            .inverse
            .clone()
            .expect("inverse_map requires a verified automorphism");
        FreeMap {
            rank: self.rank,
            images: inv.clone(),
            inverse: Some(self.images.clone()),
        }
    }

    pub fn invert(&self) -> Result<FreeMap> {
        if self.inverse.is_some() {
            return Ok(self.inverse_map());
        }
        Err(Error::NotInvertible)
    }

    /// Verifies invertibility by Nielsen-reducing the image tuple; on
    /// success the returned map carries its inverse.
    pub fn verified(&self) -> Result<FreeMap> {
        if let Some(inv) = nielsen_inverse(self.rank(), &self.images) {
            // sanity: f(inv(x_i)) = x_i
            for i in 1..=self.rank() {
                let x = Word::generator(self.rank(), i as Letter);
                let mut img = Word::identity(self.rank());
                for &l in inv[i - 1].letters() {
                    img = img.mul(&self.image_of(l));
                }
                if img != x {
                    return Err(Error::ModelInconsistency(
                        "nielsen inverse failed verification".into(),
                    ));
                }
            }
            Ok(FreeMap {
                rank: self.rank,
                images: self.images.clone(),
                inverse: Some(inv),
            })
        } else {
            // find a witness generator not in the image subgroup
            let sub = SubgroupGraph::from_words(self.rank(), &self.images);
            for i in 1..=self.rank() {
                let x = Word::generator(self.rank(), i as Letter);
                if !sub.contains(&x) {
                    return Err(Error::NotAnAutomorphism {
                        witness: format!("generator {x} is not in the image subgroup"),
                    });
                }
            }
            Err(Error::ModelInconsistency(
                "image tuple generates F_n but Nielsen reduction stalled".into(),
            ))
        }
    }

    /// Conjugation by `g`: x -> g x g^-1.
    pub fn inner(rank: usize, g: &Word) -> FreeMap {
        let images = (1..=rank)
            .map(|i| Word::generator(rank, i as Letter).conjugate(g))
            .collect();
        let ginv = g.inverse();
        let inverse = (1..=rank)
            .map(|i| Word::generator(rank, i as Letter).conjugate(&ginv))
            .collect();
        FreeMap {
            rank: rank as u8,
            images,
            inverse: Some(inverse),
        }
    }

    /// Decides innerness; returns the unique conjugator when inner.
    pub fn inner_conjugator(&self) -> Option<Word> {
        let rank = self.rank();
        // f inner with f(x) = g x g^-1 forces g to conjugate x_1 to f(x_1).
        let x1 = Word::generator(rank, 1);
        let g0 = super::words::conjugator(&self.images[0], &x1)?;
        // g is determined up to right multiplication by powers of x_1.
        let max_pow = self.images.iter().map(|w| w.len()).max().unwrap_or(0) as i32 + 2;
        for k in -max_pow..=max_pow {
            let g = g0.mul(&x1.pow(k));
            if (1..=rank).all(|i| {
                let x = Word::generator(rank, i as Letter);
                x.conjugate(&g) == self.images[i - 1]
            }) {
                return Some(g);
            }
        }
        None
    }
}

/// Nielsen reduction of the tuple with move tracking. Returns the images of
/// the inverse map when the tuple is a basis.
fn nielsen_inverse(rank: usize, images: &[Word]) -> Option<Vec<Word>> {
    // pairs (u_i, v_i) with invariant f(v_i) = u_i
    let mut u: Vec<Word> = images.to_vec();
    let mut v: Vec<Word> = (1..=rank)
        .map(|i| Word::generator(rank, i as Letter))
        .collect();

    let total = |u: &[Word]| u.iter().map(|w| w.len()).sum::<usize>();

    loop {
        if u.iter().any(|w| w.is_empty()) {
            return None; // a trivial image cannot occur in a basis tuple
        }
        let cur = total(&u);
        let mut best: Option<(usize, Word, Word)> = None; // (i, new_u_i, new_v_i)
        for i in 0..rank {
            for j in 0..rank {
                if i == j {
                    continue;
                }
                for &eps in &[1i32, -1] {
                    let uj = if eps > 0 { u[j].clone() } else { u[j].inverse() };
                    let vj = if eps > 0 { v[j].clone() } else { v[j].inverse() };
                    // right multiplication
                    let cand = u[i].mul(&uj);
                    if cand.len() < u[i].len() {
                        let nv = v[i].mul(&vj);
                        if best
                            .as_ref()
                            .map(|(_, b, _)| cand.len() < b.len())
                            .unwrap_or(true)
                        {
                            best = Some((i, cand.clone(), nv));
                        }
                    }
                    // left multiplication
                    let cand = uj.mul(&u[i]);
                    if cand.len() < u[i].len() {
                        let nv = vj.mul(&v[i]);
                        if best
                            .as_ref()
                            .map(|(_, b, _)| cand.len() < b.len())
                            .unwrap_or(true)
                        {
                            best = Some((i, cand, nv));
                        }
                    }
                }
            }
        }
        if let Some((i, nu, nv)) = best {
            u[i] = nu;
            v[i] = nv;
            continue;
        }
        // no strict single-sided reduction; try two-sided combinations which
        // strictly reduce the total length
        let mut improved = false;
        'outer: for i in 0..rank {
            for j in 0..rank {
                if i == j {
                    continue;
                }
                for &ej in &[1i32, -1] {
                    for k in 0..rank {
                        if k == i {
                            continue;
                        }
                        for &ek in &[1i32, -1] {
                            let uj = if ej > 0 { u[j].clone() } else { u[j].inverse() };
                            let uk = if ek > 0 { u[k].clone() } else { u[k].inverse() };
                            let cand = uj.mul(&u[i]).mul(&uk);
                            if cand.len() < u[i].len() {
                                let vj = if ej > 0 { v[j].clone() } else { v[j].inverse() };
                                let vk = if ek > 0 { v[k].clone() } else { v[k].inverse() };
                                u[i] = cand;
                                v[i] = vj.mul(&v[i]).mul(&vk);
                                improved = true;
                                break 'outer;
                            }
                        }
                    }
                }
            }
        }
        if improved {
            continue;
        }
        debug_assert_eq!(total(&u), cur);
        break;
    }

    // the tuple must now be a signed permutation of the generators
    let mut inverse: Vec<Option<Word>> = vec![None; rank];
    for (i, w) in u.iter().enumerate() {
        if w.len() != 1 {
            return None;
        }
        let l = w.letters()[0];
        let slot = l.unsigned_abs() as usize - 1;
        if inverse[slot].is_some() {
            return None;
        }
        inverse[slot] = Some(if l > 0 { v[i].clone() } else { v[i].inverse() });
    }
    inverse.into_iter().collect()
}

/// The standard word-metric generators: transvections, inversions and
/// transpositions, closed under inversion.
pub fn whitehead_generators(rank: usize) -> Vec<FreeMap> {
    assert!(rank >= 2);
    let mut out = Vec::new();
    let gen = |i: usize| Word::generator(rank, i as Letter);
    // transvections x_i -> x_i x_j^e and x_i -> x_j^e x_i
    for i in 1..=rank {
        for j in 1..=rank {
            if i == j {
                continue;
            }
            for &eps in &[1i8, -1] {
                for &left in &[false, true] {
                    let mut images: Vec<Word> = (1..=rank).map(gen).collect();
                    let xj = Word::generator(rank, eps * j as Letter);
                    images[i - 1] = if left {
                        xj.mul(&gen(i))
                    } else {
                        gen(i).mul(&xj)
                    };
                    out.push(FreeMap::automorphism(rank, images).expect("transvection"));
                }
            }
        }
    }
    // inversions
    for i in 1..=rank {
        let mut images: Vec<Word> = (1..=rank).map(gen).collect();
        images[i - 1] = gen(i).inverse();
        out.push(FreeMap::automorphism(rank, images).expect("inversion"));
    }
    // transpositions
    for i in 1..=rank {
        for j in (i + 1)..=rank {
            let mut images: Vec<Word> = (1..=rank).map(gen).collect();
            images.swap(i - 1, j - 1);
            out.push(FreeMap::automorphism(rank, images).expect("transposition"));
        }
    }
    out
}

/// The boundary word of a once-punctured genus-g surface: the product of
/// commutators [x1,x2][x3,x4]... in rank 2g.
pub fn cusp_word(genus: usize) -> Word {
    assert!(genus >= 1);
    let rank = 2 * genus;
    let mut w = Word::identity(rank);
    for i in 0..genus {
        let a = Word::generator(rank, (2 * i + 1) as Letter);
        let b = Word::generator(rank, (2 * i + 2) as Letter);
        let comm = a.mul(&b).mul(&a.inverse()).mul(&b.inverse());
        w = w.mul(&comm);
    }
    w
}
