//! Co-occurrence semantic spaces built from tokenized corpora.
//!
//! A corpus arrives pre-processed: one sentence per line, tokens as
//! `lemma_POS` (e.g. `bank_NOUN`). Counting runs over a window of
//! configurable radius, clipped at sentence boundaries, and is sharded by
//! sentence with a deterministic merge so thread count never changes the
//! result.

use crate::error::{Error, Result};
use crate::linalg::Vector;
use rayon::prelude::*;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Pos {
    Noun,
    Verb,
    Adj,
    Adv,
    Other,
}

impl Pos {
    pub fn tag(self) -> &'static str {
        match self {
            Pos::Noun => "NOUN",
            Pos::Verb => "VERB",
            Pos::Adj => "ADJ",
            Pos::Adv => "ADV",
            Pos::Other => "OTHER",
        }
    }

    /// Content words are everything except function words.
    pub fn is_content(self) -> bool {
        self != Pos::Other
    }
}

impl FromStr for Pos {
    type Err = ();
    fn from_str(s: &str) -> std::result::Result<Self, ()> {
        match s {
            "NOUN" => Ok(Pos::Noun),
            "VERB" => Ok(Pos::Verb),
            "ADJ" => Ok(Pos::Adj),
            "ADV" => Ok(Pos::Adv),
            "OTHER" => Ok(Pos::Other),
            _ => Err(()),
        }
    }
}

/// A vocabulary item, uniquely identified by a ⟨lemma, pos⟩ pair.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Token {
    lemma: String,
    pos: Pos,
}

impl Token {
    pub fn new(lemma: &str, pos: Pos) -> Result<Self> {
        if lemma.is_empty() || lemma.chars().any(|c| c.is_uppercase() || c.is_whitespace()) {
            return Err(Error::BadToken(format!("{lemma}_{}", pos.tag())));
        }
        Ok(Self {
            lemma: lemma.to_string(),
            pos,
        })
    }

    pub fn lemma(&self) -> &str {
        &self.lemma
    }

    pub fn pos(&self) -> Pos {
        self.pos
    }

    /// Parse `lemma_POS`. A bare lemma (no recognised tag) is rejected.
    pub fn parse(s: &str) -> Result<Self> {
        let (lemma, tag) = s.rsplit_once('_').ok_or_else(|| Error::BadToken(s.into()))?;
        let pos = tag.parse().map_err(|_| Error::BadToken(s.into()))?;
        Token::new(lemma, pos)
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}", self.lemma, self.pos.tag())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Weighting {
    Raw,
    Ratio,
    Pmi,
    Lmi,
}

impl Weighting {
    pub fn name(self) -> &'static str {
        match self {
            Weighting::Raw => "RAW",
            Weighting::Ratio => "RATIO",
            Weighting::Pmi => "PMI",
            Weighting::Lmi => "LMI",
        }
    }
}

impl FromStr for Weighting {
    type Err = ();
    fn from_str(s: &str) -> std::result::Result<Self, ()> {
        match s.to_ascii_uppercase().as_str() {
            "RAW" => Ok(Weighting::Raw),
            "RATIO" => Ok(Weighting::Ratio),
            "PMI" => Ok(Weighting::Pmi),
            "LMI" => Ok(Weighting::Lmi),
            _ => Err(()),
        }
    }
}

/// Raw counting output: per-target basis co-occurrence counts, unigram
/// counts, and the total number of tokens seen.
#[derive(Debug, Clone)]
pub struct CooccurrenceCounts {
    pub basis: Vec<Token>,
    /// count(c, t) for each target t, indexed by basis position of c.
    pub pair: BTreeMap<Token, Vec<u64>>,
    pub unigram: BTreeMap<Token, u64>,
    pub total: u64,
    pub window: usize,
}

impl CooccurrenceCounts {
    pub fn pair_count(&self, context: &Token, target: &Token) -> u64 {
        let Some(idx) = self.basis.iter().position(|b| b == context) else {
            return 0;
        };
        self.pair.get(target).map_or(0, |row| row[idx])
    }
}

/// Count basis-token occurrences within `window` tokens of each target
/// occurrence, clipping at sentence boundaries.
pub fn count_cooccurrences(
    corpus: &[Vec<Token>],
    basis: &[Token],
    window: usize,
) -> Result<CooccurrenceCounts> {
    assert!(window >= 1, "window must be at least 1");
    if corpus.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    let basis_index: HashMap<&Token, usize> =
        basis.iter().enumerate().map(|(i, t)| (t, i)).collect();

    // Shard by sentence; integer counts make the merge exact in any order,
    // but we still fold in sentence order.
    let shards: Vec<Shard> = corpus
        .par_iter()
        .map(|sentence| count_sentence(sentence, &basis_index, basis.len(), window))
        .collect();

    let mut pair: BTreeMap<Token, Vec<u64>> = BTreeMap::new();
    let mut unigram: BTreeMap<Token, u64> = BTreeMap::new();
    let mut total = 0u64;
    for shard in shards {
        total += shard.total;
        for (token, n) in shard.unigram {
            *unigram.entry(token).or_insert(0) += n;
        }
        for (token, row) in shard.pair {
            let slot = pair
                .entry(token)
                .or_insert_with(|| vec![0; basis.len()]);
            for (acc, n) in slot.iter_mut().zip(row) {
                *acc += n;
            }
        }
    }
    Ok(CooccurrenceCounts {
        basis: basis.to_vec(),
        pair,
        unigram,
        total,
        window,
    })
}

struct Shard {
    pair: HashMap<Token, Vec<u64>>,
    unigram: HashMap<Token, u64>,
    total: u64,
}

fn count_sentence(
    sentence: &[Token],
    basis_index: &HashMap<&Token, usize>,
    basis_len: usize,
    window: usize,
) -> Shard {
    let mut pair: HashMap<Token, Vec<u64>> = HashMap::new();
    let mut unigram: HashMap<Token, u64> = HashMap::new();
    for (pos, target) in sentence.iter().enumerate() {
        *unigram.entry(target.clone()).or_insert(0) += 1;
        let lo = pos.saturating_sub(window);
        let hi = (pos + window).min(sentence.len().saturating_sub(1));
        let row = pair
            .entry(target.clone())
            .or_insert_with(|| vec![0; basis_len]);
        for neighbor in sentence[lo..=hi]
            .iter()
            .enumerate()
            .filter(|&(off, _)| lo + off != pos)
            .map(|(_, t)| t)
        {
            if let Some(&idx) = basis_index.get(neighbor) {
                row[idx] += 1;
            }
        }
    }
    Shard {
        pair,
        unigram,
        total: sentence.len() as u64,
    }
}

/// A weighted co-occurrence semantic space.
#[derive(Debug, Clone, PartialEq)]
pub struct SemanticSpace {
    basis: Vec<Token>,
    vocab: BTreeMap<Token, Vector>,
    weighting: Weighting,
    window: usize,
}

impl SemanticSpace {
    pub fn from_parts(
        basis: Vec<Token>,
        vocab: BTreeMap<Token, Vector>,
        weighting: Weighting,
        window: usize,
    ) -> Self {
        for v in vocab.values() {
            assert_eq!(v.dim(), basis.len(), "vector dim must match basis size");
        }
        Self {
            basis,
            vocab,
            weighting,
            window,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Token] {
        &self.basis
    }

    pub fn weighting(&self) -> Weighting {
        self.weighting
    }

    pub fn window(&self) -> usize {
        self.window
    }

    pub fn vector(&self, token: &Token) -> Option<&Vector> {
        self.vocab.get(token)
    }

    pub fn contains(&self, token: &Token) -> bool {
        self.vocab.contains_key(token)
    }

    pub fn tokens(&self) -> impl Iterator<Item = &Token> {
        self.vocab.keys()
    }

    pub fn len(&self) -> usize {
        self.vocab.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vocab.is_empty()
    }

    /// Arithmetic mean of the vectors of in-vocabulary tokens other than
    /// `exclude`; the zero vector when none qualify.
    pub fn context_vector(&self, tokens: &[Token], exclude: Option<&Token>) -> Vector {
        let mut acc = Vector::zeros(self.dim());
        let mut n = 0usize;
        for token in tokens {
            if Some(token) == exclude {
                continue;
            }
            if let Some(v) = self.vocab.get(token) {
                acc = acc.add(v).expect("space vectors share one dim");
                n += 1;
            }
        }
        if n == 0 {
            acc
        } else {
            acc.scale(1.0 / n as f64)
        }
    }
}

/// A context vector tied to the sentence (or occurrence) it came from.
#[derive(Debug, Clone)]
pub struct ContextVector {
    pub vector: Vector,
    pub source_id: String,
}

/// Turn raw counts into a weighted space.
///
/// RATIO is p(c|t)/p(c) = count(c,t)·total / (count(t)·count(c)); PMI is its
/// natural log with nonpositive-argument entries set to 0; LMI multiplies
/// PMI by the raw count.
pub fn weight(counts: &CooccurrenceCounts, scheme: Weighting) -> SemanticSpace {
    assert!(counts.total > 0, "weighting requires a nonempty corpus");
    let basis_counts: Vec<u64> = counts
        .basis
        .iter()
        .map(|c| counts.unigram.get(c).copied().unwrap_or(0))
        .collect();
    let total = counts.total as f64;

    let mut vocab = BTreeMap::new();
    for (target, row) in &counts.pair {
        let target_count = counts.unigram.get(target).copied().unwrap_or(0) as f64;
        let entries: Vec<f64> = row
            .iter()
            .zip(&basis_counts)
            .map(|(&n, &cn)| {
                let n = n as f64;
                match scheme {
                    Weighting::Raw => n,
                    Weighting::Ratio | Weighting::Pmi | Weighting::Lmi => {
                        let denom = target_count * cn as f64;
                        let ratio = if denom == 0.0 { 0.0 } else { n * total / denom };
                        match scheme {
                            Weighting::Ratio => ratio,
                            Weighting::Pmi => pmi(ratio),
                            Weighting::Lmi => n * pmi(ratio),
                            Weighting::Raw => unreachable!(),
                        }
                    }
                }
            })
            .collect();
        vocab.insert(
            target.clone(),
            Vector::new(entries).expect("finite weights"),
        );
    }
    SemanticSpace {
        basis: counts.basis.clone(),
        vocab,
        weighting: scheme,
        window: counts.window,
    }
}

fn pmi(ratio: f64) -> f64 {
    if ratio > 0.0 {
        ratio.ln()
    } else {
        0.0
    }
}

/// Pick the top-k content tokens by corpus frequency, minus a stop list.
/// Ties break lexicographically so the basis is reproducible.
pub fn select_basis(corpus: &[Vec<Token>], k: usize, stoplist: &[Token]) -> Vec<Token> {
    let mut freq: BTreeMap<&Token, u64> = BTreeMap::new();
    for sentence in corpus {
        for token in sentence {
            if token.pos().is_content() && !stoplist.contains(token) {
                *freq.entry(token).or_insert(0) += 1;
            }
        }
    }
    let mut ranked: Vec<(&Token, u64)> = freq.into_iter().collect();
    ranked.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(b.0)));
    ranked.into_iter().take(k).map(|(t, _)| t.clone()).collect()
}

/// Read a corpus file: one sentence per line, `lemma_POS` tokens separated
/// by spaces. Blank lines are skipped.
pub fn read_corpus(path: &Path) -> Result<Vec<Vec<Token>>> {
    let file = std::fs::File::open(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let mut corpus = Vec::new();
    for (lineno, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        if line.trim().is_empty() {
            continue;
        }
        let sentence: Vec<Token> = line
            .split_whitespace()
            .map(Token::parse)
            .collect::<Result<_>>()
            .map_err(|e| Error::Format {
                path: path.to_path_buf(),
                line: lineno + 1,
                message: e.to_string(),
            })?;
        corpus.push(sentence);
    }
    Ok(corpus)
}

const SPACE_MAGIC: &str = "frobsem-space v1";

pub fn save_space(space: &SemanticSpace, path: &Path) -> Result<()> {
    let io_err = |source| Error::Io {
        path: path.to_path_buf(),
        source,
    };
    let mut out = std::io::BufWriter::new(std::fs::File::create(path).map_err(io_err)?);
    let write = |out: &mut dyn Write, s: String| out.write_all(s.as_bytes()).map_err(io_err);
    write(
        &mut out,
        format!(
            "{SPACE_MAGIC} {} {} {}\n",
            space.dim(),
            space.weighting.name(),
            space.window
        ),
    )?;
    let basis_line: Vec<String> = space.basis.iter().map(|t| t.to_string()).collect();
    write(&mut out, format!("{}\n", basis_line.join(" ")))?;
    for (token, vector) in &space.vocab {
        let weights: Vec<String> = vector.entries().iter().map(|w| format!("{w}")).collect();
        write(&mut out, format!("{token}\t{}\n", weights.join(" ")))?;
    }
    Ok(())
}

pub fn load_space(path: &Path) -> Result<SemanticSpace> {
    let bad = |line: usize, message: String| Error::Format {
        path: path.to_path_buf(),
        line,
        message,
    };
    let file = std::fs::File::open(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let mut lines = BufReader::new(file).lines().enumerate();

    let (_, header) = lines
        .next()
        .ok_or_else(|| bad(1, "empty file".into()))?
        .1
        .map_err(|e| bad(1, e.to_string()))
        .map(|h| (0, h))?;
    let rest = header
        .strip_prefix(SPACE_MAGIC)
        .ok_or_else(|| bad(1, format!("bad header `{header}`")))?;
    let fields: Vec<&str> = rest.split_whitespace().collect();
    if fields.len() != 3 {
        return Err(bad(1, "header needs `<dim> <weighting> <window>`".into()));
    }
    let dim: usize = fields[0]
        .parse()
        .map_err(|_| bad(1, format!("bad dim `{}`", fields[0])))?;
    let weighting: Weighting = fields[1]
        .parse()
        .map_err(|_| bad(1, format!("bad weighting `{}`", fields[1])))?;
    let window: usize = fields[2]
        .parse()
        .map_err(|_| bad(1, format!("bad window `{}`", fields[2])))?;

    let (_, basis_line) = lines
        .next()
        .ok_or_else(|| bad(2, "missing basis line".into()))?
        .1
        .map_err(|e| bad(2, e.to_string()))
        .map(|l| (1, l))?;
    let basis: Vec<Token> = basis_line
        .split_whitespace()
        .map(Token::parse)
        .collect::<Result<_>>()
        .map_err(|e| bad(2, e.to_string()))?;
    if basis.len() != dim {
        return Err(bad(
            2,
            format!("basis has {} tokens, header says {dim}", basis.len()),
        ));
    }

    let mut vocab = BTreeMap::new();
    for (lineno, line) in lines {
        let line = line.map_err(|e| bad(lineno + 1, e.to_string()))?;
        if line.trim().is_empty() {
            continue;
        }
        let (token_str, weights_str) = line
            .split_once('\t')
            .ok_or_else(|| bad(lineno + 1, "expected `token<TAB>weights`".into()))?;
        let token = Token::parse(token_str).map_err(|e| bad(lineno + 1, e.to_string()))?;
        let weights: Vec<f64> = weights_str
            .split_whitespace()
            .map(|w| {
                w.parse::<f64>()
                    .map_err(|_| bad(lineno + 1, format!("bad weight `{w}`")))
            })
            .collect::<Result<_>>()?;
        if weights.len() != dim {
            return Err(bad(
                lineno + 1,
                format!("{} weights, expected {dim}", weights.len()),
            ));
        }
        vocab.insert(
            token,
            Vector::new(weights).map_err(|e| bad(lineno + 1, e.to_string()))?,
        );
    }
    Ok(SemanticSpace {
        basis,
        vocab,
        weighting,
        window,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tok(s: &str) -> Token {
        Token::parse(s).unwrap()
    }

    fn toy_corpus(lines: &[&str]) -> Vec<Vec<Token>> {
        lines
            .iter()
            .map(|l| l.split_whitespace().map(tok).collect())
            .collect()
    }

    #[test]
    fn counts_window_one() {
        let corpus = toy_corpus(&["a_NOUN b_NOUN a_NOUN"]);
        let basis = vec![tok("a_NOUN"), tok("b_NOUN")];
        let counts = count_cooccurrences(&corpus, &basis, 1).unwrap();
        assert_eq!(counts.pair_count(&tok("b_NOUN"), &tok("a_NOUN")), 2);
        assert_eq!(counts.pair_count(&tok("a_NOUN"), &tok("b_NOUN")), 2);
        assert_eq!(counts.unigram[&tok("a_NOUN")], 2);
        assert_eq!(counts.unigram[&tok("b_NOUN")], 1);
        assert_eq!(counts.total, 3);
    }

    #[test]
    fn single_token_has_no_neighbors() {
        let corpus = toy_corpus(&["a_NOUN"]);
        let basis = vec![tok("a_NOUN")];
        let counts = count_cooccurrences(&corpus, &basis, 5).unwrap();
        assert_eq!(counts.pair_count(&tok("a_NOUN"), &tok("a_NOUN")), 0);
    }

    #[test]
    fn windows_clip_at_sentence_boundaries() {
        let corpus = toy_corpus(&["a_NOUN b_NOUN", "b_NOUN a_NOUN"]);
        let basis = vec![tok("a_NOUN"), tok("b_NOUN")];
        let counts = count_cooccurrences(&corpus, &basis, 5).unwrap();
        assert_eq!(counts.pair_count(&tok("a_NOUN"), &tok("b_NOUN")), 2);
    }

    #[test]
    fn counting_is_symmetric_for_basis_pairs() {
        let corpus = toy_corpus(&[
            "a_NOUN b_NOUN c_NOUN a_NOUN",
            "c_NOUN c_NOUN b_NOUN",
            "b_NOUN a_NOUN b_NOUN c_NOUN a_NOUN",
        ]);
        let basis = vec![tok("a_NOUN"), tok("b_NOUN"), tok("c_NOUN")];
        let counts = count_cooccurrences(&corpus, &basis, 2).unwrap();
        for x in &basis {
            for y in &basis {
                assert_eq!(counts.pair_count(x, y), counts.pair_count(y, x));
            }
        }
        // And the window bound on row sums.
        for (t, row) in &counts.pair {
            let sum: u64 = row.iter().sum();
            assert!(sum <= 2 * 2 * counts.unigram[t]);
        }
    }

    #[test]
    fn empty_corpus_is_an_error() {
        assert!(matches!(
            count_cooccurrences(&[], &[tok("a_NOUN")], 1),
            Err(Error::EmptyCorpus)
        ));
    }

    #[test]
    fn ratio_and_pmi_weights() {
        let corpus = toy_corpus(&["a_NOUN b_NOUN a_NOUN"]);
        let basis = vec![tok("a_NOUN"), tok("b_NOUN")];
        let counts = count_cooccurrences(&corpus, &basis, 1).unwrap();

        let ratio = weight(&counts, Weighting::Ratio);
        // count(b,a)·total / (count(a)·count(b)) = 2·3/(2·1)
        let va = ratio.vector(&tok("a_NOUN")).unwrap();
        assert!((va.get(1) - 3.0).abs() < 1e-12);

        let pmi_space = weight(&counts, Weighting::Pmi);
        let va = pmi_space.vector(&tok("a_NOUN")).unwrap();
        assert!((va.get(1) - 3.0f64.ln()).abs() < 1e-12);
        // Zero co-occurrence stays zero under every scheme.
        assert_eq!(va.get(0), 0.0);
        assert_eq!(ratio.vector(&tok("a_NOUN")).unwrap().get(0), 0.0);
        let lmi = weight(&counts, Weighting::Lmi);
        assert_eq!(lmi.vector(&tok("a_NOUN")).unwrap().get(0), 0.0);
        assert!((lmi.vector(&tok("a_NOUN")).unwrap().get(1) - 2.0 * 3.0f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn pmi_matches_log_ratio_wherever_positive() {
        let corpus = toy_corpus(&[
            "a_NOUN b_NOUN c_NOUN",
            "a_NOUN c_NOUN c_NOUN b_NOUN",
            "b_NOUN b_NOUN a_NOUN",
        ]);
        let basis = vec![tok("a_NOUN"), tok("b_NOUN"), tok("c_NOUN")];
        let counts = count_cooccurrences(&corpus, &basis, 3).unwrap();
        let ratio = weight(&counts, Weighting::Ratio);
        let pmi = weight(&counts, Weighting::Pmi);
        for token in ratio.tokens() {
            let r = ratio.vector(token).unwrap();
            let p = pmi.vector(token).unwrap();
            for i in 0..r.dim() {
                if r.get(i) > 0.0 {
                    assert!((p.get(i) - r.get(i).ln()).abs() < 1e-12);
                }
            }
        }
    }

    fn two_word_space() -> SemanticSpace {
        let mut vocab = BTreeMap::new();
        vocab.insert(tok("x_NOUN"), Vector::new(vec![2.0, 4.0]).unwrap());
        vocab.insert(tok("z_NOUN"), Vector::new(vec![0.0, 2.0]).unwrap());
        SemanticSpace::from_parts(
            vec![tok("p_NOUN"), tok("q_NOUN")],
            vocab,
            Weighting::Ratio,
            5,
        )
    }

    #[test]
    fn context_vector_means() {
        let space = two_word_space();
        let y = tok("y_NOUN");
        let one = space.context_vector(&[tok("x_NOUN")], Some(&y));
        assert_eq!(one.entries(), &[2.0, 4.0]);
        let two = space.context_vector(&[tok("x_NOUN"), tok("z_NOUN")], Some(&y));
        assert_eq!(two.entries(), &[1.0, 3.0]);
        let none = space.context_vector(&[tok("w_NOUN"), y.clone()], Some(&y));
        assert!(none.is_zero());
    }

    #[test]
    fn context_vector_is_permutation_invariant() {
        let space = two_word_space();
        let a = space.context_vector(&[tok("x_NOUN"), tok("z_NOUN")], None);
        let b = space.context_vector(&[tok("z_NOUN"), tok("x_NOUN")], None);
        assert_eq!(a, b);
    }

    #[test]
    fn space_roundtrip_is_bit_exact() {
        let corpus = toy_corpus(&["a_NOUN b_NOUN a_NOUN c_VERB", "c_VERB b_NOUN b_NOUN"]);
        let basis = vec![tok("a_NOUN"), tok("b_NOUN")];
        let counts = count_cooccurrences(&corpus, &basis, 2).unwrap();
        let space = weight(&counts, Weighting::Pmi);
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("space.txt");
        save_space(&space, &path).unwrap();
        let loaded = load_space(&path).unwrap();
        assert_eq!(space, loaded);
    }

    #[test]
    fn load_rejects_malformed_files() {
        let dir = tempfile::tempdir().unwrap();
        let empty = dir.path().join("empty.txt");
        std::fs::write(&empty, "").unwrap();
        assert!(matches!(load_space(&empty), Err(Error::Format { .. })));

        let bad_cols = dir.path().join("bad.txt");
        std::fs::write(
            &bad_cols,
            "frobsem-space v1 2 PMI 5\na_NOUN b_NOUN\nx_NOUN\t1.0\n",
        )
        .unwrap();
        assert!(matches!(load_space(&bad_cols), Err(Error::Format { .. })));
    }

    #[test]
    fn determinism_across_thread_pools() {
        let corpus = toy_corpus(&[
            "a_NOUN b_NOUN c_NOUN d_VERB",
            "d_VERB a_NOUN a_NOUN",
            "b_NOUN c_NOUN b_NOUN",
            "c_NOUN a_NOUN d_VERB b_NOUN",
        ]);
        let basis = select_basis(&corpus, 3, &[]);
        let counts = count_cooccurrences(&corpus, &basis, 2).unwrap();
        let reference = weight(&counts, Weighting::Lmi);
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let single = pool.install(|| {
            weight(
                &count_cooccurrences(&corpus, &basis, 2).unwrap(),
                Weighting::Lmi,
            )
        });
        assert_eq!(reference, single);
    }

    #[test]
    fn basis_selection_orders_by_frequency_then_name() {
        let corpus = toy_corpus(&[
            "b_NOUN b_NOUN a_NOUN a_NOUN c_NOUN the_OTHER",
            "c_NOUN b_NOUN the_OTHER",
        ]);
        let basis = select_basis(&corpus, 2, &[tok("a_NOUN")]);
        assert_eq!(basis, vec![tok("b_NOUN"), tok("c_NOUN")]);
    }
}
