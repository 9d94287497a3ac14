//! Bicolored automorphisms, folding of exchange matrices and biagrams,
//! the global flip, and recorded derivations of non-ADE families from
//! simply-laced sources.

use crate::biagram::{DynkinBiagram, DynkinType};
use crate::catalog::{CatalogError, FamilySpec, StarBase};
use crate::exchange::{Color, ExchangeMatrix};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum TransformError {
    #[error("permutation is not a bijection on [n]")]
    NotAPermutation,
    #[error("condition ({condition}) violated at vertices {witness:?}")]
    ViolatesCondition {
        condition: &'static str,
        witness: Vec<usize>,
    },
    #[error("folded entry depends on the representative in orbit {0}")]
    RepresentativeMismatch(usize),
    #[error("folded matrix does not split into a biagram: {0}")]
    FoldedSplit(String),
    #[error("no derivation recorded for family {0}")]
    NoDerivationRecorded(String),
    #[error("catalog error: {0}")]
    Catalog(#[from] CatalogError),
}

/// A validated bicolored automorphism, with its orbit partition sorted by
/// minimal member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BicoloredAutomorphism {
    pub perm: Vec<usize>,
    pub orbits: Vec<Vec<usize>>,
}

fn orbits_of(perm: &[usize]) -> Vec<Vec<usize>> {
    let n = perm.len();
    let mut seen = vec![false; n];
    let mut orbits = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut orbit = Vec::new();
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            orbit.push(x);
            x = perm[x];
        }
        orbit.sort_unstable();
        orbits.push(orbit);
    }
    orbits.sort_by_key(|o| o[0]);
    orbits
}

/// Check conditions (i)-(iv) of a bicolored automorphism against `m`.
pub fn validate_automorphism(
    m: &ExchangeMatrix,
    perm: &[usize],
) -> Result<BicoloredAutomorphism, TransformError> {
    let n = m.n();
    if perm.len() != n {
        return Err(TransformError::NotAPermutation);
    }
    let mut hit = vec![false; n];
    for &p in perm {
        if p >= n || hit[p] {
            return Err(TransformError::NotAPermutation);
        }
        hit[p] = true;
    }
    // (i) preserves the coloring.
    for i in 0..n {
        if m.eps()[perm[i]] != m.eps()[i] {
            return Err(TransformError::ViolatesCondition {
                condition: "i",
                witness: vec![i],
            });
        }
    }
    // (iii) preserves entries.
    for i in 0..n {
        for j in 0..n {
            if m.entry(perm[i], perm[j]) != m.entry(i, j) {
                return Err(TransformError::ViolatesCondition {
                    condition: "iii",
                    witness: vec![i, j],
                });
            }
        }
    }
    let orbits = orbits_of(perm);
    for orbit in &orbits {
        // (iv) within-orbit entries vanish.
        for &i in orbit {
            for &j in orbit {
                if !m.entry(i, j).is_zero() {
                    return Err(TransformError::ViolatesCondition {
                        condition: "iv",
                        witness: vec![i, j],
                    });
                }
            }
        }
        // (ii) orbit rows agree in sign against every column.
        for a in 0..orbit.len() {
            for b in (a + 1)..orbit.len() {
                for j in 0..n {
                    let prod = m.entry(orbit[a], j) * m.entry(orbit[b], j);
                    if prod.is_negative() {
                        return Err(TransformError::ViolatesCondition {
                            condition: "ii",
                            witness: vec![orbit[a], orbit[b], j],
                        });
                    }
                }
            }
        }
    }
    Ok(BicoloredAutomorphism {
        perm: perm.to_vec(),
        orbits,
    })
}

/// Fold an exchange matrix along a validated automorphism:
/// `f(B)_{IJ} = sum_{i in I} b_{ij}` for any representative `j in J`.
/// Representative independence is asserted during computation.
pub fn fold(
    m: &ExchangeMatrix,
    f: &BicoloredAutomorphism,
) -> Result<ExchangeMatrix, TransformError> {
    let orbits = &f.orbits;
    let k = orbits.len();
    let mut b = vec![vec![BigInt::zero(); k]; k];
    for (bi, orbit_i) in orbits.iter().enumerate() {
        for (bj, orbit_j) in orbits.iter().enumerate() {
            let mut val: Option<BigInt> = None;
            for &j in orbit_j {
                let s: BigInt = orbit_i.iter().map(|&i| m.entry(i, j).clone()).sum();
                match &val {
                    None => val = Some(s),
                    Some(prev) => {
                        if *prev != s {
                            return Err(TransformError::RepresentativeMismatch(bj));
                        }
                    }
                }
            }
            b[bi][bj] = val.unwrap();
        }
    }
    let eps: Vec<Color> = orbits.iter().map(|o| m.eps()[o[0]]).collect();
    Ok(ExchangeMatrix::from_parts(b, eps))
}

/// Fold a biagram: validate `perm` on its exchange matrix, fold, and split
/// the result back into `(gamma, delta)`.
pub fn fold_biagram(bg: &DynkinBiagram, perm: &[usize]) -> Result<DynkinBiagram, TransformError> {
    let m = bg.to_exchange_matrix();
    let f = validate_automorphism(&m, perm)?;
    let folded = fold(&m, &f)?;
    DynkinBiagram::from_exchange_matrix(&folded)
        .map_err(|e| TransformError::FoldedSplit(e.to_string()))
}

/// Global flip: transpose both matrices. Admissibility is preserved;
/// asserted in debug builds.
pub fn global_flip(bg: &DynkinBiagram) -> DynkinBiagram {
    let out = bg.transposed();
    debug_assert_eq!(bg.is_admissible(), out.is_admissible());
    out
}

/// One step in a derivation script.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "lowercase")]
pub enum Step {
    Fold { perm: Vec<usize> },
    Flip,
}

/// A derivation of a catalog family from a simply-laced source by folds
/// and global flips.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DerivationScript {
    pub source: FamilySpec,
    pub steps: Vec<Step>,
}

/// Replay a script: build the source and apply each step.
pub fn replay(script: &DerivationScript) -> Result<DynkinBiagram, TransformError> {
    let mut bg = script.source.build()?;
    for step in &script.steps {
        bg = match step {
            Step::Fold { perm } => fold_biagram(&bg, perm)?,
            Step::Flip => global_flip(&bg),
        };
    }
    Ok(bg)
}

/// Permutation swapping two entries of the identity.
fn swap_perm(n: usize, a: usize, b: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.swap(a, b);
    p
}

/// 3-cycle on the three leaves {0, 1, 3} of a `D_4` copy at `offset`.
fn d4_leaf_cycle(n: usize, offset: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p[offset] = offset + 1;
    p[offset + 1] = offset + 3;
    p[offset + 3] = offset;
    p
}

/// Arm swap of an `E_6` copy laid out as a path `o..o+4` with `o+5` on
/// `o+2` (the layout used by the E6 constructors).
fn e6_arm_swap(n: usize, o: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.swap(o, o + 4);
    p.swap(o + 1, o + 3);
    p
}

/// Palindrome fold of an `A_{rank}` path at `offset`.
fn a_palindrome(total: usize, offset: usize, rank: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..total).collect();
    for i in 0..rank {
        p[offset + i] = offset + rank - 1 - i;
    }
    p
}

/// The recorded derivation from an ADE source for each non-ADE family.
pub fn derive_from_ade(spec: &FamilySpec) -> Result<DerivationScript, TransformError> {
    let script = |source: FamilySpec, steps: Vec<Step>| DerivationScript { source, steps };
    match spec {
        FamilySpec::BltD(n) => {
            // D_{n+1} x D_{n+1} -> B_n ltimes D_{n+1}: fold copy 1's forks.
            let d = *n + 1;
            Ok(script(
                FamilySpec::Twist(DynkinType::d(d)),
                vec![Step::Fold {
                    perm: swap_perm(2 * d, 0, 1),
                }],
            ))
        }
        FamilySpec::CltD(n) => {
            let mut s = derive_from_ade(&FamilySpec::BltD(*n))?;
            s.steps.push(Step::Flip);
            Ok(s)
        }
        FamilySpec::BbowC(n) => {
            // C_n ltimes D_{n+1} -> C_n bowtie B_n: fold the D-side forks.
            let mut s = derive_from_ade(&FamilySpec::CltD(*n))?;
            s.steps.push(Step::Fold {
                perm: swap_perm(2 * n + 1, *n, *n + 1),
            });
            Ok(s)
        }
        FamilySpec::GltD(v) => {
            let mut steps = vec![Step::Fold {
                perm: d4_leaf_cycle(8, 0),
            }];
            if *v == 2 {
                steps.push(Step::Flip);
            }
            Ok(script(FamilySpec::Twist(DynkinType::d(4)), steps))
        }
        FamilySpec::B3bowG2(1) => {
            // D4 x D4 -> B3 ltimes D4 -> B3 bowtie_1 G2 (two folds).
            let mut s = derive_from_ade(&FamilySpec::BltD(3))?;
            // The D4-side leaves of the 7-vertex intermediate are 3, 4, 6.
            let mut p: Vec<usize> = (0..7).collect();
            p[3] = 4;
            p[4] = 6;
            p[6] = 3;
            s.steps.push(Step::Fold { perm: p });
            Ok(s)
        }
        FamilySpec::B3bowG2(_) => {
            // G2 ltimes_2 D4 -> G2 bowtie_2 B3: fold the D4 forks.
            let mut s = derive_from_ade(&FamilySpec::GltD(2))?;
            s.steps.push(Step::Fold {
                perm: swap_perm(6, 2, 3),
            });
            Ok(s)
        }
        FamilySpec::C3bowG2(v) => {
            // C3 bowtie_1 G2 = (B3 bowtie_2 G2)^T and vice versa.
            let mut s = derive_from_ade(&FamilySpec::B3bowG2(if *v == 1 { 2 } else { 1 }))?;
            s.steps.push(Step::Flip);
            Ok(s)
        }
        FamilySpec::B4BoxC4 => {
            // D5 boxtimes A7 -> B4 boxtimes C4: fork swap + A7 reversal.
            let mut p: Vec<usize> = (0..12).collect();
            p.swap(3, 4);
            for i in 0..7 {
                p[5 + i] = 5 + 6 - i;
            }
            Ok(script(FamilySpec::D5BoxA7, vec![Step::Fold { perm: p }]))
        }
        FamilySpec::Star(StarBase::BA(n)) => {
            // D_{n+1} * A_{2n-1} -> B_n * A_{2n-1}: fold the D forks,
            // which sit at positions 3n-2, 3n-1 of the A*D layout.
            let total = 3 * *n;
            Ok(script(
                FamilySpec::Star(StarBase::AD(*n)),
                vec![Step::Fold {
                    perm: swap_perm(total, total - 2, total - 1),
                }],
            ))
        }
        FamilySpec::Star(StarBase::CA(n)) => {
            let mut s = derive_from_ade(&FamilySpec::Star(StarBase::BA(*n)))?;
            s.steps.push(Step::Flip);
            Ok(s)
        }
        FamilySpec::Star(StarBase::CD(n)) => {
            // A_{2n-1} * D_{n+1} -> C_n * D_{n+1}: fold the A palindrome.
            let total = 3 * *n;
            Ok(script(
                FamilySpec::Star(StarBase::AD(*n)),
                vec![Step::Fold {
                    perm: a_palindrome(total, 0, 2 * *n - 1),
                }],
            ))
        }
        FamilySpec::Star(StarBase::BD(n)) => {
            let mut s = derive_from_ade(&FamilySpec::Star(StarBase::CD(*n)))?;
            s.steps.push(Step::Flip);
            Ok(s)
        }
        FamilySpec::Star(StarBase::BC(n)) => {
            // C_n * D_{n+1} -> B_n * C_n: fold the D forks (the last two
            // vertices of the folded A*D layout).
            let mut s = derive_from_ade(&FamilySpec::Star(StarBase::CD(*n)))?;
            s.steps.push(Step::Fold {
                perm: swap_perm(2 * n + 1, 2 * n - 1, 2 * n),
            });
            Ok(s)
        }
        FamilySpec::Star(StarBase::FE1) => Ok(script(
            FamilySpec::E6StarE6,
            vec![Step::Fold {
                perm: e6_arm_swap(12, 0),
            }],
        )),
        FamilySpec::Star(StarBase::FE2) => {
            let mut s = derive_from_ade(&FamilySpec::Star(StarBase::FE1))?;
            s.steps.push(Step::Flip);
            Ok(s)
        }
        FamilySpec::Star(StarBase::FF) => {
            // F4 *_1 E6 -> F4 * F4: fold the remaining E6 copy.
            let mut s = derive_from_ade(&FamilySpec::Star(StarBase::FE1))?;
            s.steps.push(Step::Fold {
                perm: e6_arm_swap(10, 4),
            });
            Ok(s)
        }
        _ => Err(TransformError::NoDerivationRecorded(spec.name())),
    }
}

/// Broadcast per-orbit values to an `f`-symmetric vertex labeling.
pub fn broadcast_orbit_labeling(
    f: &BicoloredAutomorphism,
    per_orbit: &[num_rational::BigRational],
) -> Vec<num_rational::BigRational> {
    let n = f.perm.len();
    let mut out = vec![num_rational::BigRational::zero(); n];
    for (oi, orbit) in f.orbits.iter().enumerate() {
        for &v in orbit {
            out[v] = per_orbit[oi].clone();
        }
    }
    out
}
