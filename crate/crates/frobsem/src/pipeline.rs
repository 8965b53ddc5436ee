//! End-to-end evaluation: compose every dataset pair under a configured
//! model, with or without prior disambiguation, and correlate the cosines
//! with the human judgements.

use crate::compose::{self, Composed, CompositionResult};
use crate::disamb::{self, Representation, SenseTensor};
use crate::error::{Error, Result};
use crate::eval::{spearman_rho, DatasetEntry, SentencePairDataset, SentenceRole, TaggedSentence};
use crate::linalg::{cosine, Matrix, Vector};
use crate::semspace::{SemanticSpace, Token};
use crate::senses::SenseInventory;
use crate::tensorize::{ArgumentOccurrences, Provenance, Role, VerbTensor};
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

/// The transitive-sentence models exposed on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvalModel {
    VerbsOnly,
    Additive,
    Multiplicative,
    Relational,
    CopySubject,
    CopyObject,
    FrobeniusAdditive,
}

impl EvalModel {
    pub fn name(self) -> &'static str {
        match self {
            EvalModel::VerbsOnly => "verbs_only",
            EvalModel::Additive => "additive",
            EvalModel::Multiplicative => "multiplicative",
            EvalModel::Relational => "relational",
            EvalModel::CopySubject => "copy_subject",
            EvalModel::CopyObject => "copy_object",
            EvalModel::FrobeniusAdditive => "frobenius_additive",
        }
    }

    /// Models whose composition consumes a verb matrix.
    pub fn needs_tensor(self) -> bool {
        matches!(
            self,
            EvalModel::Relational
                | EvalModel::CopySubject
                | EvalModel::CopyObject
                | EvalModel::FrobeniusAdditive
        )
    }
}

impl FromStr for EvalModel {
    type Err = ();
    fn from_str(s: &str) -> std::result::Result<Self, ()> {
        match s {
            "verbs_only" => Ok(EvalModel::VerbsOnly),
            "additive" => Ok(EvalModel::Additive),
            "multiplicative" => Ok(EvalModel::Multiplicative),
            "relational" => Ok(EvalModel::Relational),
            "copy_subject" => Ok(EvalModel::CopySubject),
            "copy_object" => Ok(EvalModel::CopyObject),
            "frobenius_additive" => Ok(EvalModel::FrobeniusAdditive),
            _ => Err(()),
        }
    }
}

/// Whether each human judgement is its own correlation entry or judgements
/// are averaged per pair first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Aggregate {
    #[default]
    Raw,
    Mean,
}

impl FromStr for Aggregate {
    type Err = ();
    fn from_str(s: &str) -> std::result::Result<Self, ()> {
        match s {
            "raw" => Ok(Aggregate::Raw),
            "mean" => Ok(Aggregate::Mean),
            _ => Err(()),
        }
    }
}

#[derive(Debug, Clone)]
pub struct PipelineConfig {
    pub model: EvalModel,
    pub disambiguate: bool,
    pub aggregate: Aggregate,
}

/// Everything a pipeline run reads: the space, the trained tensors, and
/// (when disambiguating) inventories plus the occurrences that sense
/// tensors are trained from.
pub struct PipelineInputs {
    pub space: SemanticSpace,
    pub tensors: Vec<VerbTensor>,
    pub inventories: Vec<SenseInventory>,
    pub occurrences: Vec<ArgumentOccurrences>,
}

#[derive(Debug, Clone)]
pub struct Report {
    pub pair_cosines: Vec<(String, f64)>,
    pub spearman: f64,
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (id, score) in &self.pair_cosines {
            writeln!(f, "{id}\t{score:.6}")?;
        }
        write!(f, "# spearman {:.6}", self.spearman)
    }
}

fn rep_cosine(a: &CompositionResult, b: &CompositionResult) -> Result<f64> {
    match (&a.payload, &b.payload) {
        (Composed::Vector(x), Composed::Vector(y)) => cosine(x, y),
        (Composed::Matrix(x), Composed::Matrix(y)) => {
            // Frobenius inner-product cosine over flattened entries.
            let xv = Vector::new(x.entries().to_vec())?;
            let yv = Vector::new(y.entries().to_vec())?;
            cosine(&xv, &yv)
        }
        _ => Err(Error::DimensionMismatch {
            context: "sentence representations of different kinds",
            left: 0,
            right: 0,
        }),
    }
}

struct Resolved {
    subj: Option<Vector>,
    verb_vector: Option<Vector>,
    verb_matrix: Option<Matrix>,
    obj: Option<Vector>,
    all_vectors: Vec<Vector>,
}

/// Word lookups shared by a whole run.
struct Lexicon<'a> {
    space: &'a SemanticSpace,
    tensors: BTreeMap<&'a Token, &'a VerbTensor>,
    inventories: BTreeMap<Token, SenseInventory>,
    sense_tensors: BTreeMap<Token, Vec<SenseTensor>>,
}

impl<'a> Lexicon<'a> {
    fn build(inputs: &'a PipelineInputs, config: &PipelineConfig) -> Result<Self> {
        // Summed tensors are the default representation; a regressed matrix
        // stands in for a word that has no summed one.
        let mut tensors = BTreeMap::new();
        for t in &inputs.tensors {
            if t.provenance == Provenance::Regressed {
                tensors.entry(&t.word).or_insert(t);
            }
        }
        for t in &inputs.tensors {
            if t.provenance == Provenance::Summed {
                tensors.insert(&t.word, t);
            }
        }
        let mut inventories = BTreeMap::new();
        let mut sense_tensors: BTreeMap<Token, Vec<SenseTensor>> = BTreeMap::new();
        if config.disambiguate {
            for inv in &inputs.inventories {
                inventories.insert(inv.word.clone(), inv.clone());
            }
            for occ in &inputs.occurrences {
                if let Some(inv) = inventories.get(occ.word()) {
                    let trained = disamb::train_sense_tensors(&inputs.space, occ, inv)?;
                    sense_tensors.insert(occ.word().clone(), trained);
                }
            }
        }
        Ok(Self {
            space: &inputs.space,
            tensors,
            inventories,
            sense_tensors,
        })
    }

    fn ambient_vector(&self, token: &Token) -> Result<Vector> {
        self.space
            .vector(token)
            .cloned()
            .ok_or_else(|| Error::MissingTensor(format!("{token} not in space")))
    }

    fn verb_matrix(&self, token: &Token) -> Result<Matrix> {
        let tensor = self
            .tensors
            .get(token)
            .ok_or_else(|| Error::MissingTensor(token.to_string()))?;
        tensor
            .payload
            .as_matrix()
            .cloned()
            .ok_or_else(|| Error::BadOccurrence(format!("{token} tensor is not order 2")))
    }

    /// Resolve a sentence into argument vectors and a verb representation,
    /// applying prior disambiguation when configured.
    fn resolve(
        &self,
        sentence: &TaggedSentence,
        config: &PipelineConfig,
    ) -> Result<Resolved> {
        let mut resolved = Resolved {
            subj: None,
            verb_vector: None,
            verb_matrix: None,
            obj: None,
            all_vectors: Vec::new(),
        };
        let disambiguated: BTreeMap<Token, Representation> = if config.disambiguate {
            let tokens = sentence.tokens();
            disamb::disambiguate_sentence(
                self.space,
                &tokens,
                &self.inventories,
                &self.sense_tensors,
            )?
            .into_iter()
            .map(|dw| {
                let rep = match dw.representation {
                    Representation::Tensor(_) if !config.model.needs_tensor() => {
                        // Vector-mixture models need a vector even for the
                        // verb: fall back to its sense centroid.
                        let inv = &self.inventories[&dw.word];
                        Representation::Vector(inv.centroids[dw.chosen_sense].clone())
                    }
                    other => other,
                };
                (dw.word, rep)
            })
            .collect()
        } else {
            BTreeMap::new()
        };

        for (role, token) in &sentence.words {
            let vector = match disambiguated.get(token) {
                Some(Representation::Vector(v)) => Some(v.clone()),
                Some(Representation::Tensor(_)) => None,
                None => {
                    if *role == SentenceRole::Verb && config.model.needs_tensor() {
                        None
                    } else {
                        Some(self.ambient_vector(token)?)
                    }
                }
            };
            match role {
                SentenceRole::Verb => {
                    if config.model.needs_tensor() {
                        let matrix = match disambiguated.get(token) {
                            Some(Representation::Tensor(t)) => t
                                .payload
                                .as_matrix()
                                .cloned()
                                .ok_or_else(|| {
                                    Error::BadOccurrence(format!("{token} tensor is not order 2"))
                                })?,
                            _ => self.verb_matrix(token)?,
                        };
                        resolved.verb_matrix = Some(matrix);
                    } else {
                        let v = match vector {
                            Some(v) => v,
                            None => self.ambient_vector(token)?,
                        };
                        resolved.verb_vector = Some(v.clone());
                        resolved.all_vectors.push(v);
                    }
                }
                SentenceRole::Arg(arg_role) => {
                    let v = vector.ok_or_else(|| {
                        Error::BadOccurrence(format!("{token} resolved to a tensor"))
                    })?;
                    match arg_role {
                        Role::Subj => resolved.subj = Some(v.clone()),
                        Role::Obj => resolved.obj = Some(v.clone()),
                        _ => {}
                    }
                    resolved.all_vectors.push(v);
                }
            }
        }
        Ok(resolved)
    }
}

fn compose_sentence(
    lexicon: &Lexicon,
    sentence: &TaggedSentence,
    config: &PipelineConfig,
) -> Result<CompositionResult> {
    let resolved = lexicon.resolve(sentence, config)?;
    let need = |slot: &Option<Vector>, what: &str| -> Result<Vector> {
        slot.clone()
            .ok_or_else(|| Error::BadOccurrence(format!("sentence lacks a {what}")))
    };
    let done = |payload: Composed, frobenius_index: Option<usize>| CompositionResult {
        payload,
        model: config.model.name(),
        frobenius_index,
    };
    match config.model {
        EvalModel::VerbsOnly => Ok(done(
            Composed::Vector(need(&resolved.verb_vector, "verb")?),
            None,
        )),
        EvalModel::Additive => Ok(done(
            Composed::Vector(compose::additive(&resolved.all_vectors, None)?),
            None,
        )),
        EvalModel::Multiplicative => Ok(done(
            Composed::Vector(compose::multiplicative(&resolved.all_vectors)?),
            None,
        )),
        EvalModel::Relational => {
            let verb = resolved.verb_matrix.as_ref().expect("tensor model");
            Ok(done(
                Composed::Matrix(compose::relational(
                    &need(&resolved.subj, "subject")?,
                    verb,
                    &need(&resolved.obj, "object")?,
                )?),
                None,
            ))
        }
        EvalModel::CopySubject => {
            let verb = resolved.verb_matrix.as_ref().expect("tensor model");
            Ok(done(
                Composed::Vector(compose::copy_subject(
                    &need(&resolved.subj, "subject")?,
                    verb,
                    &need(&resolved.obj, "object")?,
                )?),
                Some(0),
            ))
        }
        EvalModel::CopyObject => {
            let verb = resolved.verb_matrix.as_ref().expect("tensor model");
            Ok(done(
                Composed::Vector(compose::copy_object(
                    &need(&resolved.subj, "subject")?,
                    verb,
                    &need(&resolved.obj, "object")?,
                )?),
                Some(1),
            ))
        }
        EvalModel::FrobeniusAdditive => {
            let verb = resolved.verb_matrix.as_ref().expect("tensor model");
            Ok(done(
                Composed::Vector(compose::frobenius_additive(
                    &need(&resolved.subj, "subject")?,
                    verb,
                    &need(&resolved.obj, "object")?,
                )?),
                None,
            ))
        }
    }
}

fn entry_cosine(
    lexicon: &Lexicon,
    entry: &DatasetEntry,
    config: &PipelineConfig,
) -> Result<f64> {
    let with_id = |e: Error| Error::BadEntry {
        id: entry.id.clone(),
        message: e.to_string(),
    };
    let rep1 = compose_sentence(lexicon, &entry.sentence1, config).map_err(with_id)?;
    let rep2 = compose_sentence(lexicon, &entry.sentence2, config).map_err(with_id)?;
    rep_cosine(&rep1, &rep2).map_err(with_id)
}

/// Evaluate every dataset entry under the configured model and correlate
/// with the human scores. Entries are processed in parallel; the report
/// lists them in input order.
pub fn run_pipeline(
    inputs: &PipelineInputs,
    dataset: &SentencePairDataset,
    config: &PipelineConfig,
) -> Result<Report> {
    if dataset.entries.is_empty() {
        return Err(Error::Empty("dataset"));
    }
    let lexicon = Lexicon::build(inputs, config)?;
    let cosines: Vec<f64> = dataset
        .entries
        .par_iter()
        .map(|entry| entry_cosine(&lexicon, entry, config))
        .collect::<Result<_>>()?;

    let mut model_scores = Vec::new();
    let mut human_scores = Vec::new();
    for (entry, &cos) in dataset.entries.iter().zip(&cosines) {
        match config.aggregate {
            Aggregate::Raw => {
                for &score in &entry.scores {
                    model_scores.push(cos);
                    human_scores.push(score);
                }
            }
            Aggregate::Mean => {
                model_scores.push(cos);
                human_scores
                    .push(entry.scores.iter().sum::<f64>() / entry.scores.len() as f64);
            }
        }
    }
    let spearman = spearman_rho(&model_scores, &human_scores)?;
    Ok(Report {
        pair_cosines: dataset
            .entries
            .iter()
            .zip(cosines)
            .map(|(e, c)| (e.id.clone(), c))
            .collect(),
        spearman,
    })
}

/// Contexts for sense induction. Verbs in the occurrence list get one
/// context per occurrence row (the mean of the row's argument vectors,
/// keyed by the row's context id); every other content word gets one
/// context per corpus sentence that mentions it (keyed by sentence index).
pub fn gather_contexts(
    space: &SemanticSpace,
    corpus: &[Vec<Token>],
    occurrences: &[ArgumentOccurrences],
) -> BTreeMap<Token, Vec<crate::semspace::ContextVector>> {
    let mut out: BTreeMap<Token, Vec<crate::semspace::ContextVector>> = BTreeMap::new();
    for occ in occurrences {
        let mut contexts = Vec::with_capacity(occ.rows().len());
        for row in occ.rows() {
            let vector = space.context_vector(&row.args, Some(occ.word()));
            contexts.push(crate::semspace::ContextVector {
                vector,
                source_id: row.context_id.clone(),
            });
        }
        out.insert(occ.word().clone(), contexts);
    }
    for (index, sentence) in corpus.iter().enumerate() {
        let mut seen = std::collections::BTreeSet::new();
        for token in sentence {
            if !token.pos().is_content() || !space.contains(token) {
                continue;
            }
            if out.contains_key(token) && occurrences.iter().any(|o| o.word() == token) {
                continue; // verbs keep their occurrence-row contexts
            }
            if !seen.insert(token.clone()) {
                continue; // one context per sentence even if repeated
            }
            let vector = space.context_vector(sentence, Some(token));
            out.entry(token.clone())
                .or_default()
                .push(crate::semspace::ContextVector {
                    vector,
                    source_id: index.to_string(),
                });
        }
    }
    out
}
