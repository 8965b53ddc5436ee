//! Prior disambiguation: pick one sense per word from its context before
//! composition, and train one tensor per sense of a relational word.
//!
//! Sense tensors are pre-trained from the occurrence rows of each sense's
//! member contexts and cached, which is equivalent to rebuilding them from
//! the chosen cluster at disambiguation time.

use crate::error::{Error, Result};
use crate::linalg::Vector;
use crate::semspace::{SemanticSpace, Token};
use crate::senses::SenseInventory;
use crate::tensorize::{sum_tensor_with, ArgumentOccurrences, Provenance, VerbTensor};
use std::collections::BTreeMap;

/// Minimum member rows a sense needs before it gets its own tensor; smaller
/// senses merge into the dominant one.
pub const MIN_SENSE_ROWS: usize = 3;

/// Nearest sense centroid under the inventory's metric; ties go to the
/// lowest sense index.
pub fn choose_sense(inventory: &SenseInventory, context: &Vector) -> usize {
    let mut best = 0usize;
    let mut best_distance = f64::INFINITY;
    for (i, centroid) in inventory.centroids.iter().enumerate() {
        let d = inventory.metric.distance(centroid, context);
        if d < best_distance {
            best = i;
            best_distance = d;
        }
    }
    best
}

/// One trained tensor for one surviving sense of a relational word.
#[derive(Debug, Clone)]
pub struct SenseTensor {
    pub sense: usize,
    pub tensor: VerbTensor,
    pub rows_used: usize,
}

/// Train one summed tensor per sense, grouping the occurrence rows by the
/// inventory's membership. Senses with fewer than [`MIN_SENSE_ROWS`] rows
/// are merged into the dominant sense (largest membership, ties to the
/// lowest index) before training.
pub fn train_sense_tensors(
    space: &SemanticSpace,
    occ: &ArgumentOccurrences,
    inventory: &SenseInventory,
) -> Result<Vec<SenseTensor>> {
    let mut rows_by_sense: BTreeMap<usize, usize> = BTreeMap::new();
    for row in occ.rows() {
        let sense = inventory
            .membership
            .get(&row.context_id)
            .copied()
            .ok_or_else(|| Error::UncoveredContext(row.context_id.clone()))?;
        *rows_by_sense.entry(sense).or_insert(0) += 1;
    }
    let dominant = rows_by_sense
        .iter()
        .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(a.0)))
        .map(|(&sense, _)| sense)
        .unwrap_or(0);

    // Map each sense to the sense whose tensor absorbs its rows.
    let target = |sense: usize| -> usize {
        match rows_by_sense.get(&sense) {
            Some(&n) if n >= MIN_SENSE_ROWS => sense,
            _ => dominant,
        }
    };

    let mut surviving: Vec<usize> = rows_by_sense
        .keys()
        .copied()
        .map(target)
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .collect();
    surviving.sort_unstable();

    let mut out = Vec::with_capacity(surviving.len());
    for sense in surviving {
        let slice = occ.filtered(|context_id| {
            inventory
                .membership
                .get(context_id)
                .is_some_and(|&s| target(s) == sense)
        });
        let rows_used = slice.rows().len();
        let (tensor, _skipped) =
            sum_tensor_with(space, &slice, Provenance::SummedSense(sense))?;
        out.push(SenseTensor {
            sense,
            tensor,
            rows_used,
        });
    }
    Ok(out)
}

/// Which representation a disambiguated word carries into composition.
#[derive(Debug, Clone)]
pub enum Representation {
    /// Sense centroid vector (nouns and other non-relational words).
    Vector(Vector),
    /// Per-sense tensor (relational words).
    Tensor(VerbTensor),
}

#[derive(Debug, Clone)]
pub struct DisambiguatedWord {
    pub word: Token,
    pub chosen_sense: usize,
    pub representation: Representation,
}

/// Disambiguate each content word of a sentence in order: build its context
/// vector from the other content words' ambiguous vectors, choose the
/// nearest sense, and emit the sense centroid (or the sense tensor for
/// relational words).
///
/// A word counts as relational here exactly when `sense_tensors` is
/// expected to hold an entry for it, i.e. when it is a verb.
pub fn disambiguate_sentence(
    space: &SemanticSpace,
    sentence: &[Token],
    inventories: &BTreeMap<Token, SenseInventory>,
    sense_tensors: &BTreeMap<Token, Vec<SenseTensor>>,
) -> Result<Vec<DisambiguatedWord>> {
    let content: Vec<Token> = sentence
        .iter()
        .filter(|t| t.pos().is_content())
        .cloned()
        .collect();
    let mut out = Vec::with_capacity(content.len());
    for word in &content {
        let inventory = inventories
            .get(word)
            .ok_or_else(|| Error::MissingInventory(word.to_string()))?;
        let context = space.context_vector(&content, Some(word));
        let chosen_sense = choose_sense(inventory, &context);
        let representation = if word.pos() == crate::semspace::Pos::Verb {
            let tensors = sense_tensors
                .get(word)
                .ok_or_else(|| Error::MissingSenseTensor {
                    word: word.to_string(),
                    sense: chosen_sense,
                })?;
            let tensor = tensors
                .iter()
                .find(|st| st.sense == chosen_sense)
                // The chosen sense may have been merged away during
                // training; fall back to the surviving dominant tensor.
                .or_else(|| tensors.first())
                .ok_or_else(|| Error::MissingSenseTensor {
                    word: word.to_string(),
                    sense: chosen_sense,
                })?;
            Representation::Tensor(tensor.tensor.clone())
        } else {
            Representation::Vector(inventory.centroids[chosen_sense].clone())
        };
        out.push(DisambiguatedWord {
            word: word.clone(),
            chosen_sense,
            representation,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semspace::{Pos, Weighting};
    use crate::senses::{Linkage, Metric};
    use crate::tensorize::{ArgumentRow, Role};

    fn tok(s: &str) -> Token {
        Token::parse(s).unwrap()
    }

    fn inventory(word: &str, centroids: Vec<Vec<f64>>, metric: Metric) -> SenseInventory {
        SenseInventory {
            word: tok(word),
            centroids: centroids
                .into_iter()
                .map(|v| Vector::new(v).unwrap())
                .collect(),
            membership: BTreeMap::new(),
            metric,
            linkage: Linkage::Ward,
        }
    }

    #[test]
    fn choose_sense_nearest_centroid() {
        let inv = inventory("w_NOUN", vec![vec![1.0, 0.0], vec![0.0, 1.0]], Metric::Cosine);
        let context = Vector::new(vec![0.9, 0.1]).unwrap();
        assert_eq!(choose_sense(&inv, &context), 0);
    }

    #[test]
    fn choose_sense_tie_goes_low() {
        let inv = inventory("w_NOUN", vec![vec![1.0, 0.0], vec![0.0, 1.0]], Metric::Cosine);
        let equidistant = Vector::new(vec![1.0, 1.0]).unwrap();
        assert_eq!(choose_sense(&inv, &equidistant), 0);
        let single = inventory("w_NOUN", vec![vec![3.0, 3.0]], Metric::Euclidean);
        assert_eq!(choose_sense(&single, &equidistant), 0);
    }

    #[test]
    fn choose_sense_scale_invariant_for_angular_metrics() {
        for metric in [Metric::Cosine, Metric::Correlation] {
            let inv = inventory(
                "w_NOUN",
                vec![vec![1.0, 0.2, 0.0], vec![0.0, 1.0, 0.4], vec![0.3, 0.0, 1.0]],
                metric,
            );
            for i in 0..10 {
                let context =
                    Vector::new(vec![0.1 + i as f64 * 0.17, 0.9 - i as f64 * 0.05, 0.4]).unwrap();
                let base = choose_sense(&inv, &context);
                for alpha in [0.01, 3.0, 1500.0] {
                    assert_eq!(choose_sense(&inv, &context.scale(alpha)), base);
                }
            }
        }
    }

    fn space2() -> SemanticSpace {
        let mut vocab = BTreeMap::new();
        for (name, v) in [
            ("e1_NOUN", vec![1.0, 0.0]),
            ("e2_NOUN", vec![0.0, 1.0]),
            ("play_VERB", vec![1.0, 1.0]),
        ] {
            vocab.insert(tok(name), Vector::new(v).unwrap());
        }
        SemanticSpace::from_parts(
            vec![tok("b1_NOUN"), tok("b2_NOUN")],
            vocab,
            Weighting::Raw,
            5,
        )
    }

    fn occurrences(rows: Vec<(&str, &str, &str)>) -> ArgumentOccurrences {
        ArgumentOccurrences::new(
            tok("play_VERB"),
            vec![Role::Subj, Role::Obj],
            rows.into_iter()
                .map(|(id, s, o)| ArgumentRow {
                    args: vec![tok(s), tok(o)],
                    context_id: id.to_string(),
                })
                .collect(),
        )
        .unwrap()
    }

    fn membership(pairs: &[(&str, usize)]) -> BTreeMap<String, usize> {
        pairs.iter().map(|(id, s)| (id.to_string(), *s)).collect()
    }

    #[test]
    fn per_sense_tensors_from_memberships() {
        let rows = occurrences(vec![
            ("0", "e1_NOUN", "e2_NOUN"),
            ("1", "e1_NOUN", "e2_NOUN"),
            ("2", "e1_NOUN", "e2_NOUN"),
            ("3", "e2_NOUN", "e1_NOUN"),
            ("4", "e2_NOUN", "e1_NOUN"),
            ("5", "e2_NOUN", "e1_NOUN"),
        ]);
        let mut inv = inventory(
            "play_VERB",
            vec![vec![1.0, 0.0], vec![0.0, 1.0]],
            Metric::Cosine,
        );
        inv.membership = membership(&[
            ("0", 0),
            ("1", 0),
            ("2", 0),
            ("3", 1),
            ("4", 1),
            ("5", 1),
        ]);
        let tensors = train_sense_tensors(&space2(), &rows, &inv).unwrap();
        assert_eq!(tensors.len(), 2);
        assert_eq!(
            tensors[0].tensor.payload.as_matrix().unwrap().entries(),
            &[0.0, 3.0, 0.0, 0.0]
        );
        assert_eq!(
            tensors[1].tensor.payload.as_matrix().unwrap().entries(),
            &[0.0, 0.0, 3.0, 0.0]
        );
        assert_eq!(tensors[0].tensor.provenance, Provenance::SummedSense(0));
    }

    #[test]
    fn small_senses_merge_into_dominant() {
        let rows = occurrences(vec![
            ("0", "e1_NOUN", "e2_NOUN"),
            ("1", "e1_NOUN", "e2_NOUN"),
            ("2", "e2_NOUN", "e1_NOUN"),
            ("3", "e2_NOUN", "e1_NOUN"),
            ("4", "e2_NOUN", "e1_NOUN"),
            ("5", "e2_NOUN", "e1_NOUN"),
            ("6", "e2_NOUN", "e1_NOUN"),
        ]);
        let mut inv = inventory(
            "play_VERB",
            vec![vec![1.0, 0.0], vec![0.0, 1.0]],
            Metric::Cosine,
        );
        // Sense 0 has 2 rows (below minimum), sense 1 has 5.
        inv.membership = membership(&[
            ("0", 0),
            ("1", 0),
            ("2", 1),
            ("3", 1),
            ("4", 1),
            ("5", 1),
            ("6", 1),
        ]);
        let tensors = train_sense_tensors(&space2(), &rows, &inv).unwrap();
        assert_eq!(tensors.len(), 1);
        assert_eq!(tensors[0].sense, 1);
        assert_eq!(tensors[0].rows_used, 7);
        // The merged tensor is the sum over all seven rows.
        assert_eq!(
            tensors[0].tensor.payload.as_matrix().unwrap().entries(),
            &[0.0, 2.0, 5.0, 0.0]
        );
    }

    #[test]
    fn single_sense_equals_plain_sum() {
        let rows = occurrences(vec![
            ("0", "e1_NOUN", "e2_NOUN"),
            ("1", "e2_NOUN", "e1_NOUN"),
            ("2", "e1_NOUN", "e1_NOUN"),
        ]);
        let mut inv = inventory("play_VERB", vec![vec![1.0, 1.0]], Metric::Cosine);
        inv.membership = membership(&[("0", 0), ("1", 0), ("2", 0)]);
        let tensors = train_sense_tensors(&space2(), &rows, &inv).unwrap();
        assert_eq!(tensors.len(), 1);
        let (plain, _) = crate::tensorize::sum_tensor(&space2(), &rows).unwrap();
        assert_eq!(
            tensors[0].tensor.payload.as_matrix(),
            plain.payload.as_matrix()
        );
    }

    #[test]
    fn uncovered_context_id_is_an_error() {
        let rows = occurrences(vec![("0", "e1_NOUN", "e2_NOUN")]);
        let inv = inventory("play_VERB", vec![vec![1.0, 1.0]], Metric::Cosine);
        assert!(matches!(
            train_sense_tensors(&space2(), &rows, &inv),
            Err(Error::UncoveredContext(_))
        ));
    }

    fn pipeline_fixture() -> (
        SemanticSpace,
        BTreeMap<Token, SenseInventory>,
        BTreeMap<Token, Vec<SenseTensor>>,
    ) {
        let space = space2();
        let mut inventories = BTreeMap::new();
        inventories.insert(
            tok("e1_NOUN"),
            inventory("e1_NOUN", vec![vec![1.0, 0.0], vec![0.5, 0.5]], Metric::Cosine),
        );
        inventories.insert(
            tok("e2_NOUN"),
            inventory("e2_NOUN", vec![vec![0.0, 1.0]], Metric::Cosine),
        );
        inventories.insert(
            tok("play_VERB"),
            inventory(
                "play_VERB",
                vec![vec![1.0, 0.0], vec![0.0, 1.0]],
                Metric::Cosine,
            ),
        );
        let rows = occurrences(vec![
            ("0", "e1_NOUN", "e2_NOUN"),
            ("1", "e1_NOUN", "e2_NOUN"),
            ("2", "e1_NOUN", "e2_NOUN"),
            ("3", "e2_NOUN", "e1_NOUN"),
            ("4", "e2_NOUN", "e1_NOUN"),
            ("5", "e2_NOUN", "e1_NOUN"),
        ]);
        let mut inv = inventories[&tok("play_VERB")].clone();
        inv.membership = membership(&[
            ("0", 0),
            ("1", 0),
            ("2", 0),
            ("3", 1),
            ("4", 1),
            ("5", 1),
        ]);
        let tensors = train_sense_tensors(&space, &rows, &inv).unwrap();
        let mut sense_tensors = BTreeMap::new();
        sense_tensors.insert(tok("play_VERB"), tensors);
        (space, inventories, sense_tensors)
    }

    #[test]
    fn sentence_words_pick_pairwise_nearest_centroids() {
        let (space, inventories, tensors) = pipeline_fixture();
        let sentence = vec![tok("e1_NOUN"), tok("e2_NOUN")];
        let out = disambiguate_sentence(&space, &sentence, &inventories, &tensors).unwrap();
        assert_eq!(out.len(), 2);
        // Context of e1 is e2's vector (0,1): centroid (0.5,0.5) is nearer
        // than (1,0) under cosine.
        assert_eq!(out[0].chosen_sense, 1);
        assert_eq!(out[1].chosen_sense, 0);
        assert_eq!(out[0].word, tok("e1_NOUN"));
    }

    #[test]
    fn single_word_sentence_falls_to_first_sense() {
        let (space, inventories, tensors) = pipeline_fixture();
        let out =
            disambiguate_sentence(&space, &[tok("e1_NOUN")], &inventories, &tensors).unwrap();
        // Zero context vector: all cosine distances are 1, tie picks 0.
        assert_eq!(out[0].chosen_sense, 0);
    }

    #[test]
    fn verbs_emit_sense_tensors() {
        let (space, inventories, tensors) = pipeline_fixture();
        let sentence = vec![tok("e2_NOUN"), tok("play_VERB"), tok("e1_NOUN")];
        let out = disambiguate_sentence(&space, &sentence, &inventories, &tensors).unwrap();
        assert_eq!(out.len(), 3);
        // Verb context is mean of e2,e1 = (0.5,0.5): cosine ties, sense 0.
        let Representation::Tensor(t) = &out[1].representation else {
            panic!("verb must carry a tensor");
        };
        assert_eq!(out[1].chosen_sense, 0);
        assert_eq!(t.payload.as_matrix().unwrap().entries(), &[0.0, 3.0, 0.0, 0.0]);
        // Output order equals input order.
        assert_eq!(out[0].word, tok("e2_NOUN"));
        assert_eq!(out[2].word, tok("e1_NOUN"));
    }

    #[test]
    fn missing_inventory_and_tensor_errors() {
        let (space, mut inventories, tensors) = pipeline_fixture();
        let err = disambiguate_sentence(&space, &[tok("ghost_NOUN")], &inventories, &tensors);
        assert!(matches!(err, Err(Error::MissingInventory(_))));

        inventories.insert(
            tok("sing_VERB"),
            inventory("sing_VERB", vec![vec![1.0, 1.0]], Metric::Cosine),
        );
        let err = disambiguate_sentence(&space, &[tok("sing_VERB")], &inventories, &tensors);
        assert!(matches!(err, Err(Error::MissingSenseTensor { .. })));
    }

    #[test]
    fn function_words_are_not_disambiguated() {
        let (space, inventories, tensors) = pipeline_fixture();
        let sentence = vec![tok("the_OTHER"), tok("e1_NOUN")];
        let out = disambiguate_sentence(&space, &sentence, &inventories, &tensors).unwrap();
        assert_eq!(out.len(), 1);
        assert_eq!(out[0].word.pos(), Pos::Noun);
    }

    #[test]
    fn degenerate_centroids_reproduce_ambiguous_vectors() {
        // When every sense centroid equals the ambiguous vector, the
        // disambiguated representation is that vector exactly.
        let space = space2();
        let mut inventories = BTreeMap::new();
        for name in ["e1_NOUN", "e2_NOUN"] {
            let ambient = space.vector(&tok(name)).unwrap().clone();
            inventories.insert(
                tok(name),
                SenseInventory {
                    word: tok(name),
                    centroids: vec![ambient.clone(), ambient],
                    membership: BTreeMap::new(),
                    metric: Metric::Cosine,
                    linkage: Linkage::Ward,
                },
            );
        }
        let out = disambiguate_sentence(
            &space,
            &[tok("e1_NOUN"), tok("e2_NOUN")],
            &inventories,
            &BTreeMap::new(),
        )
        .unwrap();
        for dw in &out {
            let Representation::Vector(v) = &dw.representation else {
                panic!("nouns carry vectors");
            };
            assert_eq!(v, space.vector(&dw.word).unwrap());
        }
    }
}
