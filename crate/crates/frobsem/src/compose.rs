//! Composition models: vector mixtures, the Frobenius transitive and
//! ditransitive variants, verb-phrase closed forms, coordination,
//! prepositions and complementizer pass-through.
//!
//! Every model here assumes the sentence space equals the noun space, so all
//! operands share one dimension; mixed dimensions are rejected rather than
//! padded. All functions are pure over immutable inputs.

use crate::error::{Error, Result};
use crate::linalg::{
    frobenius_copy, iota_delete, matvec, pointwise, pointwise_matrix, tensor_product, vecmat,
    Axis, Matrix, Tensor3, Vector,
};

/// Which leg of a ditransitive tensor gets copied.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DitransitiveCopy {
    Subj,
    Iobj,
    Dobj,
}

/// Frobenius (point-wise) coordination or its distributive additive
/// alternative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CoordMode {
    #[default]
    Frobenius,
    Additive,
}

/// Which argument a two-argument functional word copies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CopyArg {
    Subject,
    Object,
}

/// Case of a relative pronoun: whether the head noun is the subject or the
/// object of the relative clause.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PronounCase {
    Subject,
    Object,
}

/// Result of composing a constituent; either a vector or (for relational and
/// verb-phrase models) a matrix. `frobenius_index` records which argument
/// was copied, when one was.
#[derive(Debug, Clone, PartialEq)]
pub struct CompositionResult {
    pub payload: Composed,
    pub model: &'static str,
    pub frobenius_index: Option<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Composed {
    Vector(Vector),
    Matrix(Matrix),
}

impl Composed {
    pub fn as_vector(&self) -> Option<&Vector> {
        match self {
            Composed::Vector(v) => Some(v),
            _ => None,
        }
    }

    pub fn as_matrix(&self) -> Option<&Matrix> {
        match self {
            Composed::Matrix(m) => Some(m),
            _ => None,
        }
    }
}

/// Weighted sum Σ wᵢ·vᵢ. With `weights` absent every weight is 1.
pub fn additive(vectors: &[Vector], weights: Option<&[f64]>) -> Result<Vector> {
    let Some(first) = vectors.first() else {
        return Err(Error::Empty("additive composition needs vectors"));
    };
    if let Some(w) = weights {
        if w.len() != vectors.len() {
            return Err(Error::DimensionMismatch {
                context: "additive weights",
                left: vectors.len(),
                right: w.len(),
            });
        }
    }
    let mut acc = Vector::zeros(first.dim());
    for (i, v) in vectors.iter().enumerate() {
        let w = weights.map_or(1.0, |ws| ws[i]);
        acc = acc.add(&v.scale(w))?;
    }
    Ok(acc)
}

/// Elementwise product fold.
pub fn multiplicative(vectors: &[Vector]) -> Result<Vector> {
    let Some(first) = vectors.first() else {
        return Err(Error::Empty("multiplicative composition needs vectors"));
    };
    let mut acc = first.clone();
    for v in &vectors[1..] {
        acc = pointwise(&acc, v)?;
    }
    Ok(acc)
}

/// Relational model: verb ⊙ (subj ⊗ obj), a matrix-valued sentence.
pub fn relational(subj: &Vector, verb: &Matrix, obj: &Vector) -> Result<Matrix> {
    pointwise_matrix(verb, &tensor_product(subj, obj))
}

/// Copy-Subject: subj ⊙ (verb × obj). The verb phrase is composed
/// categorically and merged with the subject.
pub fn copy_subject(subj: &Vector, verb: &Matrix, obj: &Vector) -> Result<Vector> {
    pointwise(subj, &matvec(verb, obj)?)
}

/// Copy-Object: obj ⊙ (verbᵀ × subj).
pub fn copy_object(subj: &Vector, verb: &Matrix, obj: &Vector) -> Result<Vector> {
    pointwise(obj, &vecmat(subj, verb)?)
}

/// Sum of the two Frobenius vectors of a transitive sentence.
pub fn frobenius_additive(subj: &Vector, verb: &Matrix, obj: &Vector) -> Result<Vector> {
    copy_subject(subj, verb, obj)?.add(&copy_object(subj, verb, obj)?)
}

/// Two-matrix Frobenius additive: subj ⊙ (verb_o × obj) + (subjᵀ × verb_s) ⊙ obj.
/// With a single summed matrix both arguments are that matrix.
pub fn frobenius_additive_two(
    subj: &Vector,
    verb_s: &Matrix,
    verb_o: &Matrix,
    obj: &Vector,
) -> Result<Vector> {
    copy_subject(subj, verb_o, obj)?.add(&copy_object(subj, verb_s, obj)?)
}

/// Ditransitive Frobenius vectors. Tensor axes are ordered
/// (SUBJ, IOBJ, DOBJ), matching the construction order of the summed tensor.
pub fn ditransitive_frobenius(
    subj: &Vector,
    verb: &Tensor3,
    iobj: &Vector,
    dobj: &Vector,
    copy: DitransitiveCopy,
) -> Result<Vector> {
    match copy {
        DitransitiveCopy::Subj => {
            // subj ⊙ ((verb × iobj) × dobj)
            let vi = verb.contract_axis2(iobj)?;
            pointwise(subj, &matvec(&vi, dobj)?)
        }
        DitransitiveCopy::Dobj => {
            // dobj ⊙ ((verb × iobj)ᵀ × subj)
            let vi = verb.contract_axis2(iobj)?;
            pointwise(dobj, &vecmat(subj, &vi)?)
        }
        DitransitiveCopy::Iobj => {
            // iobj ⊙ ((verb × dobj)ᵀ × subj)
            let vd = verb.contract_axis3(dobj)?;
            pointwise(iobj, &vecmat(subj, &vd)?)
        }
    }
}

/// Verb-phrase Copy-Subject: the contracted verb-object vector expanded to a
/// diagonal matrix, Δ(verb × obj).
pub fn vp_copy_subject(verb: &Matrix, obj: &Vector) -> Result<Matrix> {
    Ok(frobenius_copy(&matvec(verb, obj)?))
}

/// Verb-phrase Copy-Object: the verb matrix with each column scaled by the
/// object, v_ij · obj_j.
pub fn vp_copy_object(verb: &Matrix, obj: &Vector) -> Result<Matrix> {
    if verb.cols() != obj.dim() {
        return Err(Error::DimensionMismatch {
            context: "vp copy-object",
            left: verb.cols(),
            right: obj.dim(),
        });
    }
    let mut out = Matrix::zeros(verb.rows(), verb.cols());
    for i in 0..verb.rows() {
        for j in 0..verb.cols() {
            out.set(i, j, verb.get(i, j) * obj.get(j));
        }
    }
    Ok(out)
}

/// Coordinated noun phrase: a ⊙ b (or a + b in additive mode).
pub fn coord_np(a: &Vector, b: &Vector, mode: CoordMode) -> Result<Vector> {
    match mode {
        CoordMode::Frobenius => pointwise(a, b),
        CoordMode::Additive => a.add(b),
    }
}

/// Coordination of two intransitive verb phrases under one subject: the
/// first verb composes categorically, the second has its subject dimension
/// deleted by ι.
pub fn coord_vp_intransitive(
    subj: &Vector,
    v1: &Matrix,
    v2: &Matrix,
    mode: CoordMode,
) -> Result<Vector> {
    match mode {
        CoordMode::Frobenius => pointwise(&vecmat(subj, v1)?, &iota_delete(v2, Axis::Rows)),
        // Distributive reading: subj composes with each verb, results add.
        CoordMode::Additive => vecmat(subj, v1)?.add(&vecmat(subj, v2)?),
    }
}

/// Coordination of two transitive verb phrases under one subject:
/// subj ⊙ (v1 × o1) ⊙ (v2 × o2).
pub fn coord_vp_transitive(
    subj: &Vector,
    v1: &Matrix,
    o1: &Vector,
    v2: &Matrix,
    o2: &Vector,
    mode: CoordMode,
) -> Result<Vector> {
    match mode {
        CoordMode::Frobenius => {
            pointwise(&pointwise(subj, &matvec(v1, o1)?)?, &matvec(v2, o2)?)
        }
        CoordMode::Additive => {
            copy_subject(subj, v1, o1)?.add(&copy_subject(subj, v2, o2)?)
        }
    }
}

/// Coordinated sentences: s1 ⊙ s2 (or s1 + s2 in additive mode).
pub fn coord_sentence(s1: &Vector, s2: &Vector, mode: CoordMode) -> Result<Vector> {
    coord_np(s1, s2, mode)
}

/// Preposition composition. A preposition is a two-argument function, so the
/// Copy-Subject/Copy-Object formulas apply with (sentence part, preposition
/// matrix, noun) in place of (subject, verb, object).
pub fn compose_prep_verb(
    sent_part: &Vector,
    prep: &Matrix,
    noun: &Vector,
    model: CopyArg,
) -> Result<Vector> {
    match model {
        CopyArg::Subject => copy_subject(sent_part, prep, noun),
        CopyArg::Object => copy_object(sent_part, prep, noun),
    }
}

/// A complementizer lets the sentence flow through unchanged.
pub fn complementizer_pass(s: &Vector) -> Vector {
    s.clone()
}

/// Relative pronoun: the head noun is merged with the clause via the
/// Frobenius vector that copies its grammatical slot.
pub fn rel_pronoun(
    head: &Vector,
    verb: &Matrix,
    other: &Vector,
    case: PronounCase,
) -> Result<Vector> {
    match case {
        PronounCase::Subject => copy_subject(head, verb, other),
        PronounCase::Object => copy_object(other, verb, head),
    }
}
