//! Algebra-to-operad constructions: the min-envelope, operadization of a
//! monomial algebra, and the dimension profile of the symmetric envelope.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::MonomialAlgebraPresentation;
use crate::branch::BranchWord;
use crate::dims::{DimSeries, IndexKind};
use crate::operad::{MonomialOperadPresentation, OperadError};
use crate::tree::{Alphabet, TreeMonomial};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("source series is not connected (values[0] must be 1)")]
    NotConnected,
    #[error("operadization needs at least 2 variables, got {0}")]
    TooFewVariables(usize),
    #[error(transparent)]
    Operad(#[from] OperadError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    MinEnvelope,
    Operadization { arity: usize },
    SymmetricEnvelope,
    Direct,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OperadDimProfile {
    pub dims: DimSeries,
    pub provenance: Provenance,
}

fn check_connected(a: &DimSeries) -> Result<(), ConstructionError> {
    if a.values.first().is_some_and(One::is_one) {
        Ok(())
    } else {
        Err(ConstructionError::NotConnected)
    }
}

/// `P_A(n) = A_{n-1}`, so `G_{P_A}(z) = z·H_A(z)`.
pub fn min_envelope_dims(a: &DimSeries) -> Result<OperadDimProfile, ConstructionError> {
    check_connected(a)?;
    let mut values = Vec::with_capacity(a.len() + 1);
    values.push(BigUint::zero());
    values.extend(a.values.iter().cloned());
    let mut dims = DimSeries::new(values, IndexKind::Arity);
    dims.exact = a.exact;
    Ok(OperadDimProfile { dims, provenance: Provenance::MinEnvelope })
}

/// `dim SO_A(n) = n·dim A_{n-1}`, so `G(z) = z·(z·H_A(z))'`.
pub fn symmetric_envelope_dims(a: &DimSeries) -> Result<OperadDimProfile, ConstructionError> {
    check_connected(a)?;
    let mut values = Vec::with_capacity(a.len() + 1);
    values.push(BigUint::zero());
    values.extend(a.values.iter().enumerate().map(|(k, v)| v * (k + 1)));
    let mut dims = DimSeries::new(values, IndexKind::Arity);
    dims.exact = a.exact;
    Ok(OperadDimProfile { dims, provenance: Provenance::SymmetricEnvelope })
}

/// Arity profile of the operadization of an algebra on `d` variables:
/// `1` in arity 1, and `dim A_l` in arity `(l+1)d - l`; zero elsewhere.
pub fn operadization_profile(a: &DimSeries, d: usize, max_arity: usize) -> Result<OperadDimProfile, ConstructionError> {
    check_connected(a)?;
    if d < 2 {
        return Err(ConstructionError::TooFewVariables(d));
    }
    let mut values = vec![BigUint::zero(); max_arity + 1];
    if max_arity >= 1 {
        values[1] = BigUint::one();
    }
    let mut exact = a.exact;
    for l in 0.. {
        let n = (l + 1) * d - l;
        if n > max_arity {
            break;
        }
        match a.values.get(l) {
            Some(v) => values[n] = v.clone(),
            None => {
                exact = false;
                break;
            }
        }
    }
    let mut dims = DimSeries::new(values, IndexKind::Arity);
    dims.exact = exact;
    Ok(OperadDimProfile { dims, provenance: Provenance::Operadization { arity: d } })
}

/// `R^∨_{i,j} = (a ∘_j a) ∘_i a`: a root with internal children at `i < j`.
pub fn r_vee(d: usize, i: usize, j: usize) -> TreeMonomial {
    let mut ch = vec![TreeMonomial::Leaf; d];
    ch[i - 1] = TreeMonomial::corolla(0, d);
    ch[j - 1] = TreeMonomial::corolla(0, d);
    TreeMonomial::Node(0, ch)
}

/// `O(x_{i_1} ⋯ x_{i_k}) = a ∘_{i_1} (a ∘_{i_2} (⋯ ∘_{i_k} a))`.
pub fn word_image(d: usize, word: &[usize]) -> TreeMonomial {
    let alphabet = Alphabet::new([("a", d)]).expect("static alphabet");
    let mut letters: Vec<(usize, usize)> = word.iter().map(|&v| (0, v + 1)).collect();
    letters.push((0, 1));
    BranchWord::new(letters).to_tree(&alphabet).expect("indices are within the arity")
}

/// The operadization: one generator `a` of arity `d`, relations
/// `R^∨_{i,j}` for `i < j` and `O(w)` for each forbidden word `w`.
pub fn operadize(a: &MonomialAlgebraPresentation) -> Result<MonomialOperadPresentation, ConstructionError> {
    let d = a.num_variables();
    if d < 2 {
        return Err(ConstructionError::TooFewVariables(d));
    }
    let alphabet = Alphabet::new([("a", d)]).expect("arity d >= 2");
    let mut rels = Vec::new();
    for i in 1..=d {
        for j in i + 1..=d {
            rels.push(r_vee(d, i, j));
        }
    }
    rels.extend(a.forbidden().iter().map(|w| word_image(d, w)));
    Ok(MonomialOperadPresentation::new(alphabet, rels, None)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operad::Engine;

    fn lits(p: &MonomialOperadPresentation) -> Vec<String> {
        p.relations().iter().map(|r| p.alphabet().format_monomial(r)).collect()
    }

    #[test]
    fn operadize_small_examples() {
        let fib = MonomialAlgebraPresentation::numbered(2, vec![vec![0, 0]]).unwrap();
        let q = operadize(&fib).unwrap();
        let mut got = lits(&q);
        got.sort();
        assert_eq!(got, vec!["a(a(*,*),a(*,*))", "a(a(a(*,*),*),*)"]);

        let lin = MonomialAlgebraPresentation::numbered(2, vec![vec![1, 0], vec![1, 1]]).unwrap();
        let mut got = lits(&operadize(&lin).unwrap());
        got.sort();
        assert_eq!(got, vec!["a(*,a(*,a(*,*)))", "a(*,a(a(*,*),*))", "a(a(*,*),a(*,*))"]);

        let free = MonomialAlgebraPresentation::numbered(2, vec![]).unwrap();
        let q = operadize(&free).unwrap();
        let d = q.dim_by_arity(12, Engine::ProfileDp, None).unwrap();
        for n in 2..=12 {
            assert_eq!(d.values[n], BigUint::from(1u64 << (n - 2)));
        }
        let one = MonomialAlgebraPresentation::numbered(1, vec![]).unwrap();
        assert_eq!(operadize(&one), Err(ConstructionError::TooFewVariables(1)));
    }

    #[test]
    fn profile_matches_enumeration_for_three_variables() {
        let a = MonomialAlgebraPresentation::numbered(3, vec![vec![0, 1], vec![2, 2, 0]]).unwrap();
        let q = operadize(&a).unwrap();
        let prof = operadization_profile(&a.hilbert_dims(8), 3, 15).unwrap();
        assert_eq!(q.dim_by_arity(15, Engine::ProfileDp, None).unwrap().values, prof.dims.values);
        assert_eq!(q.dim_by_arity(15, Engine::Brute, None).unwrap().values, prof.dims.values);
    }

    #[test]
    fn envelopes() {
        let unit = DimSeries::from_u64(&[1, 0, 0], IndexKind::Degree);
        assert_eq!(min_envelope_dims(&unit).unwrap().dims.to_u64().unwrap(), vec![0, 1, 0, 0]);
        assert_eq!(symmetric_envelope_dims(&unit).unwrap().dims.to_u64().unwrap(), vec![0, 1, 0, 0]);
        let a = DimSeries::from_u64(&[1, 2, 3], IndexKind::Degree);
        assert_eq!(symmetric_envelope_dims(&a).unwrap().dims.to_u64().unwrap(), vec![0, 1, 4, 9]);
        let bad = DimSeries::from_u64(&[2, 1], IndexKind::Degree);
        assert_eq!(min_envelope_dims(&bad), Err(ConstructionError::NotConnected));
    }
}
