//! Relational word tensors built by argument summing: the tensor of a verb
//! (or preposition, or complemented verb) is the sum over its corpus
//! occurrences of the tensor product of the argument vectors, in role order.
//!
//! Rows with out-of-vocabulary arguments are skipped and counted rather than
//! rejected; real corpora always have gaps and the sum is robust to missing
//! summands. Duplicate rows are kept, so frequency weighting emerges on its
//! own. Summed tensors are never normalized: downstream comparison is
//! cosine-based and scale-invariant.

use crate::error::{Error, Result};
use crate::linalg::{
    frobenius_copy, tensor_product, tensor_product3, Matrix, Tensor3, Vector,
};
use crate::semspace::{SemanticSpace, Token};
use std::fmt;
use std::io::BufRead;
use std::path::Path;
use std::str::FromStr;

/// Grammatical role of one argument slot.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Role {
    Subj,
    Obj,
    Iobj,
    Dobj,
    ModifiedVerb,
    NounHead,
    BareInf,
}

impl Role {
    pub fn name(self) -> &'static str {
        match self {
            Role::Subj => "SUBJ",
            Role::Obj => "OBJ",
            Role::Iobj => "IOBJ",
            Role::Dobj => "DOBJ",
            Role::ModifiedVerb => "MODIFIED_VERB",
            Role::NounHead => "NOUN_HEAD",
            Role::BareInf => "BARE_INF",
        }
    }
}

impl FromStr for Role {
    type Err = ();
    fn from_str(s: &str) -> std::result::Result<Role, ()> {
        match s {
            "SUBJ" => Ok(Role::Subj),
            "OBJ" => Ok(Role::Obj),
            "IOBJ" => Ok(Role::Iobj),
            "DOBJ" => Ok(Role::Dobj),
            "MODIFIED_VERB" => Ok(Role::ModifiedVerb),
            "NOUN_HEAD" => Ok(Role::NounHead),
            "BARE_INF" => Ok(Role::BareInf),
            _ => Err(()),
        }
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One corpus occurrence of a relational word: its arguments in role order,
/// plus an identifier linking the occurrence to a clustering context.
#[derive(Debug, Clone)]
pub struct ArgumentRow {
    pub args: Vec<Token>,
    pub context_id: String,
}

/// All argument occurrences of one relational word, with a fixed role
/// signature. Mixed-role rows are rejected at construction.
#[derive(Debug, Clone)]
pub struct ArgumentOccurrences {
    word: Token,
    roles: Vec<Role>,
    rows: Vec<ArgumentRow>,
}

impl ArgumentOccurrences {
    pub fn new(word: Token, roles: Vec<Role>, rows: Vec<ArgumentRow>) -> Result<Self> {
        if roles.is_empty() || roles.len() > 3 {
            return Err(Error::BadOccurrence(format!(
                "arity must be 1..=3, got {}",
                roles.len()
            )));
        }
        for row in &rows {
            if row.args.len() != roles.len() {
                return Err(Error::BadOccurrence(format!(
                    "row `{}` has {} arguments for {} roles",
                    row.context_id,
                    row.args.len(),
                    roles.len()
                )));
            }
        }
        Ok(Self { word, roles, rows })
    }

    pub fn word(&self) -> &Token {
        &self.word
    }

    pub fn arity(&self) -> usize {
        self.roles.len()
    }

    pub fn roles(&self) -> &[Role] {
        &self.roles
    }

    pub fn rows(&self) -> &[ArgumentRow] {
        &self.rows
    }

    /// Keep only the rows whose context ids satisfy `keep`.
    pub fn filtered<F: Fn(&str) -> bool>(&self, keep: F) -> ArgumentOccurrences {
        ArgumentOccurrences {
            word: self.word.clone(),
            roles: self.roles.clone(),
            rows: self
                .rows
                .iter()
                .filter(|r| keep(&r.context_id))
                .cloned()
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Summed,
    SummedSense(usize),
    Regressed,
    Separable,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Summed => write!(f, "SUMMED"),
            Provenance::SummedSense(k) => write!(f, "SUMMED_SENSE:{k}"),
            Provenance::Regressed => write!(f, "REGRESSED"),
            Provenance::Separable => write!(f, "SEPARABLE"),
        }
    }
}

impl FromStr for Provenance {
    type Err = ();
    fn from_str(s: &str) -> std::result::Result<Self, ()> {
        match s {
            "SUMMED" => Ok(Provenance::Summed),
            "REGRESSED" => Ok(Provenance::Regressed),
            "SEPARABLE" => Ok(Provenance::Separable),
            _ => match s.strip_prefix("SUMMED_SENSE:") {
                Some(k) => k.parse().map(Provenance::SummedSense).map_err(|_| ()),
                None => Err(()),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum TensorPayload {
    Vector(Vector),
    Matrix(Matrix),
    Tensor3(Tensor3),
}

impl TensorPayload {
    pub fn order(&self) -> usize {
        match self {
            TensorPayload::Vector(_) => 1,
            TensorPayload::Matrix(_) => 2,
            TensorPayload::Tensor3(_) => 3,
        }
    }

    pub fn as_vector(&self) -> Option<&Vector> {
        match self {
            TensorPayload::Vector(v) => Some(v),
            _ => None,
        }
    }

    pub fn as_matrix(&self) -> Option<&Matrix> {
        match self {
            TensorPayload::Matrix(m) => Some(m),
            _ => None,
        }
    }

    pub fn as_tensor3(&self) -> Option<&Tensor3> {
        match self {
            TensorPayload::Tensor3(t) => Some(t),
            _ => None,
        }
    }
}

/// An order-1/2/3 tensor for a relational word, with provenance.
#[derive(Debug, Clone)]
pub struct VerbTensor {
    pub word: Token,
    pub payload: TensorPayload,
    pub provenance: Provenance,
    pub role_signature: Vec<Role>,
}

impl VerbTensor {
    pub fn order(&self) -> usize {
        self.payload.order()
    }
}

/// Sum of the tensor products of the argument vectors, one summand per row,
/// in role order. Also reports how many rows were skipped as OOV.
pub fn sum_tensor(space: &SemanticSpace, occ: &ArgumentOccurrences) -> Result<(VerbTensor, usize)> {
    sum_tensor_with(space, occ, Provenance::Summed)
}

pub fn sum_tensor_with(
    space: &SemanticSpace,
    occ: &ArgumentOccurrences,
    provenance: Provenance,
) -> Result<(VerbTensor, usize)> {
    let dim = space.dim();
    let mut skipped = 0usize;
    let mut used = 0usize;
    let mut payload = match occ.arity() {
        1 => TensorPayload::Vector(Vector::zeros(dim)),
        2 => TensorPayload::Matrix(Matrix::zeros(dim, dim)),
        _ => TensorPayload::Tensor3(Tensor3::zeros(dim, dim, dim)),
    };
    for row in occ.rows() {
        let Some(vectors) = lookup_all(space, &row.args) else {
            skipped += 1;
            continue;
        };
        used += 1;
        payload = match payload {
            TensorPayload::Vector(acc) => TensorPayload::Vector(acc.add(vectors[0])?),
            TensorPayload::Matrix(acc) => {
                TensorPayload::Matrix(acc.add(&tensor_product(vectors[0], vectors[1]))?)
            }
            TensorPayload::Tensor3(acc) => TensorPayload::Tensor3(
                acc.add(&tensor_product3(vectors[0], vectors[1], vectors[2]))?,
            ),
        };
    }
    if used == 0 {
        return Err(Error::NoUsableRows {
            word: occ.word().to_string(),
            skipped,
        });
    }
    Ok((
        VerbTensor {
            word: occ.word().clone(),
            payload,
            provenance,
            role_signature: occ.roles().to_vec(),
        },
        skipped,
    ))
}

fn lookup_all<'a>(space: &'a SemanticSpace, args: &[Token]) -> Option<Vec<&'a Vector>> {
    args.iter().map(|t| space.vector(t)).collect()
}

/// Product-state variant: (Σ subj) ⊗ (Σ obj). Rank is at most 1 by
/// construction, so it serves as the separability baseline.
pub fn separable_tensor(
    space: &SemanticSpace,
    occ: &ArgumentOccurrences,
) -> Result<(VerbTensor, usize)> {
    if occ.arity() != 2 {
        return Err(Error::BadOccurrence(format!(
            "separable tensor needs arity 2, got {}",
            occ.arity()
        )));
    }
    let dim = space.dim();
    let mut left = Vector::zeros(dim);
    let mut right = Vector::zeros(dim);
    let mut skipped = 0usize;
    let mut used = 0usize;
    for row in occ.rows() {
        let Some(vectors) = lookup_all(space, &row.args) else {
            skipped += 1;
            continue;
        };
        used += 1;
        left = left.add(vectors[0])?;
        right = right.add(vectors[1])?;
    }
    if used == 0 {
        return Err(Error::NoUsableRows {
            word: occ.word().to_string(),
            skipped,
        });
    }
    Ok((
        VerbTensor {
            word: occ.word().clone(),
            payload: TensorPayload::Matrix(tensor_product(&left, &right)),
            provenance: Provenance::Separable,
            role_signature: occ.roles().to_vec(),
        },
        skipped,
    ))
}

/// Verb-phrase tensor: Δ applied to the sum of the object vectors, giving a
/// diagonal matrix.
pub fn vp_verb_tensor(
    space: &SemanticSpace,
    word: &Token,
    objects: &[Token],
) -> Result<(VerbTensor, usize)> {
    let mut acc = Vector::zeros(space.dim());
    let mut skipped = 0usize;
    let mut used = 0usize;
    for obj in objects {
        match space.vector(obj) {
            Some(v) => {
                acc = acc.add(v)?;
                used += 1;
            }
            None => skipped += 1,
        }
    }
    if used == 0 {
        return Err(Error::NoUsableRows {
            word: word.to_string(),
            skipped,
        });
    }
    Ok((
        VerbTensor {
            word: word.clone(),
            payload: TensorPayload::Matrix(frobenius_copy(&acc)),
            provenance: Provenance::Summed,
            role_signature: vec![Role::Obj],
        },
        skipped,
    ))
}

/// Preposition matrix. The role signature records whether the preposition
/// modifies a verb (`MODIFIED_VERB, OBJ`) or a noun (`NOUN_HEAD, OBJ`).
pub fn preposition_tensor(
    space: &SemanticSpace,
    occ: &ArgumentOccurrences,
) -> Result<(VerbTensor, usize)> {
    match occ.roles() {
        [Role::ModifiedVerb, Role::Obj] | [Role::NounHead, Role::Obj] => sum_tensor(space, occ),
        other => Err(Error::BadOccurrence(format!(
            "preposition roles must be (MODIFIED_VERB|NOUN_HEAD, OBJ), got {other:?}"
        ))),
    }
}

/// One subject/preposition/object chain for a phrasal verb.
#[derive(Debug, Clone)]
pub struct PhrasalRow {
    pub subj: Token,
    pub prep: String,
    pub obj: Token,
}

/// Tensor for a phrasal verb (`look after`, `run into`): the preposition is
/// part of the lexeme key, not a tensor leg, so every row must share it.
pub fn phrasal_verb_tensor(
    space: &SemanticSpace,
    verb: &Token,
    rows: &[PhrasalRow],
) -> Result<(VerbTensor, usize)> {
    let Some(first) = rows.first() else {
        return Err(Error::NoUsableRows {
            word: verb.to_string(),
            skipped: 0,
        });
    };
    for row in rows {
        if row.prep != first.prep {
            return Err(Error::MixedPreposition {
                first: first.prep.clone(),
                other: row.prep.clone(),
            });
        }
    }
    let occ = ArgumentOccurrences::new(
        verb.clone(),
        vec![Role::Subj, Role::Obj],
        rows.iter()
            .enumerate()
            .map(|(i, r)| ArgumentRow {
                args: vec![r.subj.clone(), r.obj.clone()],
                context_id: i.to_string(),
            })
            .collect(),
    )?;
    sum_tensor(space, &occ)
}

/// Tensor for a verb complemented by a bare infinitive, summing
/// subject ⊗ complement-verb pairs.
pub fn complemented_verb_tensor(
    space: &SemanticSpace,
    occ: &ArgumentOccurrences,
) -> Result<(VerbTensor, usize)> {
    match occ.roles() {
        [Role::Subj, Role::BareInf] => sum_tensor(space, occ),
        other => Err(Error::BadOccurrence(format!(
            "complemented verb roles must be (SUBJ, BARE_INF), got {other:?}"
        ))),
    }
}

const TENSORS_MAGIC: &str = "frobsem-tensors v1";

/// Save tensors: a header with the shared dimension, then per tensor a line
/// `tensor <word> <order> <provenance> <role,role,…>` followed by one line
/// of entries in lexicographic order.
pub fn save_tensors(tensors: &[VerbTensor], dim: usize, path: &Path) -> Result<()> {
    let mut out = format!("{TENSORS_MAGIC} {dim}\n");
    for t in tensors {
        let roles: Vec<&str> = t.role_signature.iter().map(|r| r.name()).collect();
        out.push_str(&format!(
            "tensor {} {} {} {}\n",
            t.word,
            t.order(),
            t.provenance,
            roles.join(",")
        ));
        let entries: &[f64] = match &t.payload {
            TensorPayload::Vector(v) => v.entries(),
            TensorPayload::Matrix(m) => m.entries(),
            TensorPayload::Tensor3(t3) => t3.entries(),
        };
        let rendered: Vec<String> = entries.iter().map(|w| format!("{w}")).collect();
        out.push_str(&rendered.join(" "));
        out.push('\n');
    }
    std::fs::write(path, out).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn load_tensors(path: &Path) -> Result<Vec<VerbTensor>> {
    let bad = |line: usize, message: String| Error::Format {
        path: path.to_path_buf(),
        line,
        message,
    };
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or_else(|| bad(1, "empty file".into()))?;
    let dim: usize = header
        .strip_prefix(TENSORS_MAGIC)
        .ok_or_else(|| bad(1, format!("bad header `{header}`")))?
        .trim()
        .parse()
        .map_err(|_| bad(1, "bad dimension".into()))?;

    let mut out = Vec::new();
    while let Some((lineno, line)) = lines.next() {
        if line.trim().is_empty() {
            continue;
        }
        let rest = line
            .strip_prefix("tensor ")
            .ok_or_else(|| bad(lineno + 1, format!("expected `tensor …`, got `{line}`")))?;
        let fields: Vec<&str> = rest.split_whitespace().collect();
        if fields.len() != 4 {
            return Err(bad(lineno + 1, "tensor header needs 4 fields".into()));
        }
        let word = Token::parse(fields[0]).map_err(|e| bad(lineno + 1, e.to_string()))?;
        let order: usize = fields[1]
            .parse()
            .map_err(|_| bad(lineno + 1, format!("bad order `{}`", fields[1])))?;
        let provenance: Provenance = fields[2]
            .parse()
            .map_err(|_| bad(lineno + 1, format!("bad provenance `{}`", fields[2])))?;
        let role_signature: Vec<Role> = fields[3]
            .split(',')
            .map(|r| {
                r.parse()
                    .map_err(|_| bad(lineno + 1, format!("bad role `{r}`")))
            })
            .collect::<Result<_>>()?;
        if role_signature.len() != order {
            return Err(bad(
                lineno + 1,
                format!("{} roles for an order-{order} tensor", role_signature.len()),
            ));
        }
        let (entries_lineno, entries_line) = lines
            .next()
            .ok_or_else(|| bad(lineno + 2, "missing entries line".into()))?;
        let entries: Vec<f64> = entries_line
            .split_whitespace()
            .map(|w| {
                w.parse::<f64>()
                    .map_err(|_| bad(entries_lineno + 1, format!("bad number `{w}`")))
            })
            .collect::<Result<_>>()?;
        let expected = dim.pow(order as u32);
        if entries.len() != expected {
            return Err(bad(
                entries_lineno + 1,
                format!("{} entries, expected {expected}", entries.len()),
            ));
        }
        let mk = |e| bad(entries_lineno + 1, format!("{e}"));
        let payload = match order {
            1 => TensorPayload::Vector(Vector::new(entries).map_err(mk)?),
            2 => TensorPayload::Matrix(Matrix::new(dim, dim, entries).map_err(mk)?),
            3 => TensorPayload::Tensor3(Tensor3::new(dim, dim, dim, entries).map_err(mk)?),
            _ => return Err(bad(lineno + 1, format!("unsupported order {order}"))),
        };
        out.push(VerbTensor {
            word,
            payload,
            provenance,
            role_signature,
        });
    }
    Ok(out)
}

/// Read an occurrence file: one row per line, `head<TAB>role=lemma_POS;…`.
/// The head may be written as `lemma_POS` or as a bare lemma (taken as a
/// verb). Context ids are per-head row ordinals, in file order.
pub fn read_occurrences(path: &Path) -> Result<Vec<ArgumentOccurrences>> {
    let file = std::fs::File::open(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let bad = |line: usize, message: String| Error::Format {
        path: path.to_path_buf(),
        line,
        message,
    };
    // Preserve first-seen order of heads.
    let mut order: Vec<Token> = Vec::new();
    let mut parts: std::collections::HashMap<Token, (Vec<Role>, Vec<ArgumentRow>)> =
        std::collections::HashMap::new();
    for (lineno, line) in std::io::BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|e| bad(lineno + 1, e.to_string()))?;
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let (head_str, args_str) = line
            .split_once('\t')
            .ok_or_else(|| bad(lineno + 1, "expected `head<TAB>role=token;…`".into()))?;
        let head = match Token::parse(head_str) {
            Ok(t) => t,
            Err(_) => Token::new(head_str, crate::semspace::Pos::Verb)
                .map_err(|e| bad(lineno + 1, e.to_string()))?,
        };
        let mut roles = Vec::new();
        let mut args = Vec::new();
        for piece in args_str.split(';').filter(|p| !p.trim().is_empty()) {
            let (role_str, token_str) = piece
                .split_once('=')
                .ok_or_else(|| bad(lineno + 1, format!("expected `role=token` in `{piece}`")))?;
            let role: Role = role_str
                .trim()
                .parse()
                .map_err(|_| bad(lineno + 1, format!("unknown role `{role_str}`")))?;
            roles.push(role);
            args.push(
                Token::parse(token_str.trim()).map_err(|e| bad(lineno + 1, e.to_string()))?,
            );
        }
        let entry = parts.entry(head.clone()).or_insert_with(|| {
            order.push(head.clone());
            (roles.clone(), Vec::new())
        });
        if entry.0 != roles {
            return Err(bad(
                lineno + 1,
                format!("row roles {roles:?} disagree with earlier rows {:?}", entry.0),
            ));
        }
        let context_id = entry.1.len().to_string();
        entry.1.push(ArgumentRow { args, context_id });
    }
    order
        .into_iter()
        .map(|head| {
            let (roles, rows) = parts.remove(&head).expect("head recorded");
            ArgumentOccurrences::new(head, roles, rows)
        })
        .collect()
}
