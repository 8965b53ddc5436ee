use clap::{Args, Parser, Subcommand};
use frobsem::compose::{self, CoordMode};
use frobsem::eval::{SentencePairDataset, SentenceRole, TaggedSentence};
use frobsem::linalg::{cosine, pointwise, Matrix, Vector};
use frobsem::pipeline::{
    gather_contexts, run_pipeline, Aggregate, EvalModel, PipelineConfig, PipelineInputs,
};
use frobsem::quantum::{
    density_from_ensemble, frobenius_compose_density, symmetric_entropy, trace_similarity,
    DensityMatrix, Ensemble,
};
use frobsem::regress::{read_training_pairs, train_matrix, RegressionProblem};
use frobsem::semspace::{
    count_cooccurrences, load_space, read_corpus, save_space, select_basis, weight, Token,
    Weighting,
};
use frobsem::senses::{induce_senses, load_inventories, save_inventories, Linkage, Metric};
use frobsem::tensorize::{
    load_tensors, read_occurrences, save_tensors, separable_tensor, sum_tensor, Provenance,
    TensorPayload, VerbTensor,
};
use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(
    name = "frobsem",
    about = "Distributional semantic spaces, Frobenius composition, sense induction and evaluation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a weighted co-occurrence space from a tokenized corpus.
    BuildSpace(BuildSpaceArgs),
    /// Build relational tensors from an occurrence file by argument summing.
    BuildTensors(BuildTensorsArgs),
    /// Induce word senses by clustering context vectors.
    InduceSenses(InduceSensesArgs),
    /// Show the chosen sense of each content word of a sentence.
    Disambiguate(DisambiguateArgs),
    /// Train a verb matrix by regularized regression on holistic pairs.
    TrainRegression(TrainRegressionArgs),
    /// Compose one sentence or phrase and print its representation.
    Compose(ComposeArgs),
    /// Evaluate a composition model against a human-scored dataset.
    Eval(EvalArgs),
    /// Reproduce the two-dimensional density-matrix walkthrough.
    DemoQuantum,
    /// Exercise the truth-theoretic reading of Frobenius composition.
    DemoTruth,
}

#[derive(Args)]
struct BuildSpaceArgs {
    /// Corpus file: one sentence per line, `lemma_POS` tokens.
    #[arg(long)]
    corpus: PathBuf,
    #[arg(long)]
    output: PathBuf,
    /// Co-occurrence window radius.
    #[arg(long, default_value_t = 5)]
    window: usize,
    /// Weighting scheme: raw, ratio, pmi or lmi.
    #[arg(long, default_value = "pmi")]
    weighting: String,
    /// Number of most frequent content words forming the basis.
    #[arg(long, default_value_t = 2000)]
    basis_size: usize,
    /// Optional stop-list file: one `lemma_POS` token per line.
    #[arg(long)]
    stoplist: Option<PathBuf>,
}

#[derive(Args)]
struct BuildTensorsArgs {
    #[arg(long)]
    space: PathBuf,
    /// Occurrence file: `head<TAB>role=lemma_POS;…` rows.
    #[arg(long)]
    occurrences: PathBuf,
    #[arg(long)]
    output: PathBuf,
    /// Sense inventory file: also emit one tensor per surviving sense.
    #[arg(long)]
    senses: Option<PathBuf>,
    /// Also emit rank-1 separable baselines for arity-2 heads.
    #[arg(long)]
    separable: bool,
}

#[derive(Args)]
struct InduceSensesArgs {
    #[arg(long)]
    space: PathBuf,
    /// Corpus file for noun (and other non-verb) contexts.
    #[arg(long)]
    corpus: Option<PathBuf>,
    /// Occurrence file for verb contexts (one per occurrence row).
    #[arg(long)]
    occurrences: Option<PathBuf>,
    #[arg(long)]
    output: PathBuf,
    /// Cluster distance metric: euclidean, cosine or correlation.
    #[arg(long, default_value = "correlation")]
    metric: String,
    /// Linkage: complete or ward.
    #[arg(long, default_value = "ward")]
    linkage: String,
    /// Words with fewer contexts than this are skipped.
    #[arg(long, default_value_t = 3)]
    min_contexts: usize,
    /// Only induce senses for these comma-separated `lemma_POS` words.
    #[arg(long)]
    words: Option<String>,
}

#[derive(Args)]
struct DisambiguateArgs {
    #[arg(long)]
    space: PathBuf,
    #[arg(long)]
    senses: PathBuf,
    /// Occurrence file used to train per-sense verb tensors.
    #[arg(long)]
    occurrences: Option<PathBuf>,
    /// Sentence as `role=lemma_POS;…` (role VERB marks the head).
    #[arg(long)]
    sentence: String,
}

#[derive(Args)]
struct TrainRegressionArgs {
    /// Training pairs: `arg_vector<TAB>target_vector` per line.
    #[arg(long)]
    pairs: PathBuf,
    #[arg(long)]
    output: PathBuf,
    /// Word the trained matrix belongs to, as `lemma_POS`.
    #[arg(long)]
    word: String,
    #[arg(long, default_value_t = 0.0)]
    lambda: f64,
    #[arg(long, default_value_t = 0.5)]
    lr: f64,
    #[arg(long, default_value_t = 2000)]
    epochs: usize,
    /// Shuffle row order once under this seed before training.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args)]
struct ComposeArgs {
    #[arg(long)]
    space: PathBuf,
    #[arg(long)]
    tensors: Option<PathBuf>,
    /// verbs_only, additive, multiplicative, relational, copy_subject,
    /// copy_object, frobenius_additive, coord_np, coord_sentence or
    /// coord_vp_transitive.
    #[arg(long)]
    model: String,
    /// Coordination flavor: frobenius or additive.
    #[arg(long, default_value = "frobenius")]
    coord: String,
    /// Sentence as `role=lemma_POS;…`; coordination models read their
    /// conjuncts positionally.
    #[arg(long)]
    sentence: String,
}

#[derive(Args)]
struct EvalArgs {
    #[arg(long)]
    space: PathBuf,
    #[arg(long)]
    tensors: PathBuf,
    /// Dataset: `id<TAB>sentence1<TAB>sentence2<TAB>score[,score…]`.
    #[arg(long)]
    dataset: PathBuf,
    #[arg(long, default_value = "copy_object")]
    model: String,
    /// Apply prior disambiguation before composing.
    #[arg(long)]
    disambiguate: bool,
    #[arg(long)]
    senses: Option<PathBuf>,
    #[arg(long)]
    occurrences: Option<PathBuf>,
    /// raw: each judgement is a correlation entry; mean: average first.
    #[arg(long, default_value = "raw")]
    aggregate: String,
    /// Write the report here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<(), String> {
    match cli.command {
        Command::BuildSpace(args) => build_space(args),
        Command::BuildTensors(args) => build_tensors(args),
        Command::InduceSenses(args) => induce_senses_cmd(args),
        Command::Disambiguate(args) => disambiguate_cmd(args),
        Command::TrainRegression(args) => train_regression(args),
        Command::Compose(args) => compose_cmd(args),
        Command::Eval(args) => eval_cmd(args),
        Command::DemoQuantum => demo_quantum(),
        Command::DemoTruth => demo_truth(),
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn parse_weighting(s: &str) -> Result<Weighting, String> {
    s.parse().map_err(|_| format!("unknown weighting `{s}`"))
}

fn parse_metric(s: &str) -> Result<Metric, String> {
    s.parse().map_err(|_| format!("unknown metric `{s}`"))
}

fn parse_linkage(s: &str) -> Result<Linkage, String> {
    s.parse().map_err(|_| format!("unknown linkage `{s}`"))
}

fn build_space(args: BuildSpaceArgs) -> Result<(), String> {
    let start = Instant::now();
    let corpus = read_corpus(&args.corpus).map_err(err)?;
    let stoplist = match &args.stoplist {
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| format!("{}: {e}", path.display()))?
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(Token::parse)
            .collect::<frobsem::Result<Vec<_>>>()
            .map_err(err)?,
        None => Vec::new(),
    };
    let basis = select_basis(&corpus, args.basis_size, &stoplist);
    if basis.is_empty() {
        return Err("corpus has no content words to form a basis".into());
    }
    let counts = count_cooccurrences(&corpus, &basis, args.window).map_err(err)?;
    let space = weight(&counts, parse_weighting(&args.weighting)?);
    save_space(&space, &args.output).map_err(err)?;
    println!(
        "space: {} words, {} basis dims, window {}, {} ({} ms)",
        space.len(),
        space.dim(),
        space.window(),
        space.weighting().name(),
        start.elapsed().as_millis()
    );
    Ok(())
}

fn build_tensors(args: BuildTensorsArgs) -> Result<(), String> {
    let space = load_space(&args.space).map_err(err)?;
    let occurrences = read_occurrences(&args.occurrences).map_err(err)?;
    let inventories = match &args.senses {
        Some(path) => load_inventories(path).map_err(err)?,
        None => Vec::new(),
    };
    let mut tensors: Vec<VerbTensor> = Vec::new();
    for occ in &occurrences {
        let (tensor, skipped) = sum_tensor(&space, occ).map_err(err)?;
        if skipped > 0 {
            eprintln!("note: {} skipped {skipped} out-of-vocabulary rows", occ.word());
        }
        tensors.push(tensor);
        if args.separable && occ.arity() == 2 {
            tensors.push(separable_tensor(&space, occ).map_err(err)?.0);
        }
        if let Some(inv) = inventories.iter().find(|inv| &inv.word == occ.word()) {
            for st in frobsem::disamb::train_sense_tensors(&space, occ, inv).map_err(err)? {
                tensors.push(st.tensor);
            }
        }
    }
    save_tensors(&tensors, space.dim(), &args.output).map_err(err)?;
    println!("tensors: {} written to {}", tensors.len(), args.output.display());
    Ok(())
}

fn induce_senses_cmd(args: InduceSensesArgs) -> Result<(), String> {
    let space = load_space(&args.space).map_err(err)?;
    let corpus = match &args.corpus {
        Some(path) => read_corpus(path).map_err(err)?,
        None => Vec::new(),
    };
    let occurrences = match &args.occurrences {
        Some(path) => read_occurrences(path).map_err(err)?,
        None => Vec::new(),
    };
    if corpus.is_empty() && occurrences.is_empty() {
        return Err("need --corpus and/or --occurrences to gather contexts".into());
    }
    let metric = parse_metric(&args.metric)?;
    let linkage = parse_linkage(&args.linkage)?;
    let only: Option<Vec<Token>> = match &args.words {
        Some(list) => Some(
            list.split(',')
                .map(|w| Token::parse(w.trim()))
                .collect::<frobsem::Result<_>>()
                .map_err(err)?,
        ),
        None => None,
    };
    let contexts = gather_contexts(&space, &corpus, &occurrences);
    let mut inventories = Vec::new();
    for (word, ctxs) in &contexts {
        if let Some(only) = &only {
            if !only.contains(word) {
                continue;
            }
        }
        if ctxs.len() < args.min_contexts.max(3) {
            continue;
        }
        let inv = induce_senses(word, ctxs, linkage, metric).map_err(err)?;
        if inv.has_near_duplicate_centroids(1e-9) {
            eprintln!("note: {word} has near-duplicate sense centroids (likely unambiguous)");
        }
        inventories.push(inv);
    }
    save_inventories(&inventories, &args.output).map_err(err)?;
    println!(
        "senses: {} inventories written to {}",
        inventories.len(),
        args.output.display()
    );
    Ok(())
}

fn disambiguate_cmd(args: DisambiguateArgs) -> Result<(), String> {
    let space = load_space(&args.space).map_err(err)?;
    let inventories = load_inventories(&args.senses).map_err(err)?;
    let occurrences = match &args.occurrences {
        Some(path) => read_occurrences(path).map_err(err)?,
        None => Vec::new(),
    };
    let sentence = TaggedSentence::parse(&args.sentence)?;
    let inventory_map: BTreeMap<Token, _> = inventories
        .into_iter()
        .map(|inv| (inv.word.clone(), inv))
        .collect();
    let mut sense_tensors = BTreeMap::new();
    for occ in &occurrences {
        if let Some(inv) = inventory_map.get(occ.word()) {
            sense_tensors.insert(
                occ.word().clone(),
                frobsem::disamb::train_sense_tensors(&space, occ, inv).map_err(err)?,
            );
        }
    }
    let tokens = sentence.tokens();
    let out = frobsem::disamb::disambiguate_sentence(
        &space,
        &tokens,
        &inventory_map,
        &sense_tensors,
    )
    .map_err(err)?;
    for dw in out {
        let kind = match dw.representation {
            frobsem::disamb::Representation::Vector(_) => "centroid",
            frobsem::disamb::Representation::Tensor(_) => "sense tensor",
        };
        println!("{}\tsense {}\t{kind}", dw.word, dw.chosen_sense);
    }
    Ok(())
}

fn train_regression(args: TrainRegressionArgs) -> Result<(), String> {
    let (inputs, targets) = read_training_pairs(&args.pairs).map_err(err)?;
    let dim = targets[0].dim();
    let mut problem = RegressionProblem::new(inputs, targets)
        .with_lambda(args.lambda)
        .with_lr(args.lr)
        .with_epochs(args.epochs);
    if let Some(seed) = args.seed {
        problem = problem.with_shuffle(seed);
    }
    let trained = train_matrix(&problem).map_err(err)?;
    let word = Token::parse(&args.word).map_err(err)?;
    // A regressed matrix contracts its column leg with the argument and
    // leaves the row leg for the theme, just like a summed verb matrix.
    let tensor = VerbTensor {
        word,
        payload: TensorPayload::Matrix(trained.matrix),
        provenance: Provenance::Regressed,
        role_signature: vec![
            frobsem::tensorize::Role::Subj,
            frobsem::tensorize::Role::Obj,
        ],
    };
    save_tensors(std::slice::from_ref(&tensor), dim, &args.output).map_err(err)?;
    println!(
        "trained: loss {:.6e} after {} epochs -> {}",
        trained.final_loss,
        trained.epochs_run,
        args.output.display()
    );
    Ok(())
}

fn render_vector(v: &Vector) -> String {
    let entries: Vec<String> = v.entries().iter().map(|x| format!("{x:.6}")).collect();
    entries.join(" ")
}

fn compose_cmd(args: ComposeArgs) -> Result<(), String> {
    let space = load_space(&args.space).map_err(err)?;
    let sentence = TaggedSentence::parse(&args.sentence)?;
    let coord = match args.coord.as_str() {
        "frobenius" => CoordMode::Frobenius,
        "additive" => CoordMode::Additive,
        other => return Err(format!("unknown coordination mode `{other}`")),
    };
    let vector_of = |token: &Token| -> Result<Vector, String> {
        space
            .vector(token)
            .cloned()
            .ok_or_else(|| format!("{token} not in space"))
    };
    let by_role = |tag: &str| -> Result<Vector, String> {
        let role: SentenceRole = tag.parse().map_err(|_| format!("bad role {tag}"))?;
        let token = sentence
            .find(role)
            .ok_or_else(|| format!("sentence lacks role {tag}"))?;
        vector_of(token)
    };

    // Coordination models read their conjuncts positionally; everything
    // else resolves arguments by role.
    match args.model.as_str() {
        "coord_np" | "coord_sentence" => {
            if sentence.words.len() != 2 {
                return Err("coord_np/coord_sentence take exactly two tokens".into());
            }
            let a = vector_of(&sentence.words[0].1)?;
            let b = vector_of(&sentence.words[1].1)?;
            let out = compose::coord_np(&a, &b, coord).map_err(err)?;
            println!("{}", render_vector(&out));
            return Ok(());
        }
        "coord_vp_transitive" => {
            let tensors = match &args.tensors {
                Some(path) => load_tensors(path).map_err(err)?,
                None => return Err("coord_vp_transitive needs --tensors".into()),
            };
            let matrix_of = |token: &Token| -> Result<Matrix, String> {
                tensors
                    .iter()
                    .find(|t| &t.word == token && t.provenance == Provenance::Summed)
                    .and_then(|t| t.payload.as_matrix().cloned())
                    .ok_or_else(|| format!("no summed matrix for {token}"))
            };
            if sentence.words.len() != 5 {
                return Err(
                    "coord_vp_transitive takes SUBJ, VERB, OBJ, VERB, OBJ in order".into(),
                );
            }
            let subj = vector_of(&sentence.words[0].1)?;
            let v1 = matrix_of(&sentence.words[1].1)?;
            let o1 = vector_of(&sentence.words[2].1)?;
            let v2 = matrix_of(&sentence.words[3].1)?;
            let o2 = vector_of(&sentence.words[4].1)?;
            let out =
                compose::coord_vp_transitive(&subj, &v1, &o1, &v2, &o2, coord).map_err(err)?;
            println!("{}", render_vector(&out));
            return Ok(());
        }
        _ => {}
    }

    let model: EvalModel = args
        .model
        .parse()
        .map_err(|_| format!("unknown model `{}`", args.model))?;
    if model.needs_tensor() {
        let tensors = match &args.tensors {
            Some(path) => load_tensors(path).map_err(err)?,
            None => return Err(format!("model {} needs --tensors", model.name())),
        };
        let verb = sentence
            .find(SentenceRole::Verb)
            .ok_or("sentence lacks a VERB")?
            .clone();
        let tensor = tensors
            .iter()
            .find(|t| t.word == verb && t.provenance == Provenance::Summed)
            .or_else(|| {
                tensors
                    .iter()
                    .find(|t| t.word == verb && t.provenance == Provenance::Regressed)
            })
            .ok_or_else(|| format!("no tensor for {verb}"))?;
        let matrix = tensor
            .payload
            .as_matrix()
            .ok_or_else(|| format!("{verb} tensor is not order 2"))?;
        let subj = by_role("SUBJ")?;
        let obj = by_role("OBJ")?;
        match model {
            EvalModel::Relational => {
                let m = compose::relational(&subj, matrix, &obj).map_err(err)?;
                for i in 0..m.rows() {
                    let row: Vec<String> =
                        (0..m.cols()).map(|j| format!("{:.6}", m.get(i, j))).collect();
                    println!("{}", row.join(" "));
                }
            }
            EvalModel::CopySubject => {
                println!(
                    "{}",
                    render_vector(&compose::copy_subject(&subj, matrix, &obj).map_err(err)?)
                );
            }
            EvalModel::CopyObject => {
                println!(
                    "{}",
                    render_vector(&compose::copy_object(&subj, matrix, &obj).map_err(err)?)
                );
            }
            EvalModel::FrobeniusAdditive => {
                println!(
                    "{}",
                    render_vector(
                        &compose::frobenius_additive(&subj, matrix, &obj).map_err(err)?
                    )
                );
            }
            _ => unreachable!("vector models handled below"),
        }
        return Ok(());
    }

    let vectors: Vec<Vector> = sentence
        .words
        .iter()
        .map(|(_, t)| vector_of(t))
        .collect::<Result<_, _>>()?;
    let out = match model {
        EvalModel::VerbsOnly => by_role("VERB")?,
        EvalModel::Additive => compose::additive(&vectors, None).map_err(err)?,
        EvalModel::Multiplicative => compose::multiplicative(&vectors).map_err(err)?,
        _ => unreachable!("tensor models handled above"),
    };
    println!("{}", render_vector(&out));
    Ok(())
}

fn eval_cmd(args: EvalArgs) -> Result<(), String> {
    let space = load_space(&args.space).map_err(err)?;
    let tensors = load_tensors(&args.tensors).map_err(err)?;
    let dataset = SentencePairDataset::load(&args.dataset).map_err(err)?;
    let model: EvalModel = args
        .model
        .parse()
        .map_err(|_| format!("unknown model `{}`", args.model))?;
    let aggregate: Aggregate = args
        .aggregate
        .parse()
        .map_err(|_| format!("unknown aggregate `{}`", args.aggregate))?;
    let inventories = match &args.senses {
        Some(path) => load_inventories(path).map_err(err)?,
        None if args.disambiguate => {
            return Err("--disambiguate needs --senses".into());
        }
        None => Vec::new(),
    };
    let occurrences = match &args.occurrences {
        Some(path) => read_occurrences(path).map_err(err)?,
        None => Vec::new(),
    };
    let inputs = PipelineInputs {
        space,
        tensors,
        inventories,
        occurrences,
    };
    let config = PipelineConfig {
        model,
        disambiguate: args.disambiguate,
        aggregate,
    };
    let report = run_pipeline(&inputs, &dataset, &config).map_err(err)?;
    match &args.output {
        Some(path) => std::fs::write(path, format!("{report}\n"))
            .map_err(|e| format!("{}: {e}", path.display()))?,
        None => println!("{report}"),
    }
    Ok(())
}

/// The two-dimensional walkthrough: an ambiguous noun as a mixed state, its
/// entropy, a Frobenius adjective-noun composition, trace similarities, and
/// the plain-vector baseline cosines.
fn demo_quantum() -> Result<(), String> {
    let vec2 = |a: f64, b: f64| Vector::new(vec![a, b]).expect("finite");
    let bank_f = vec2(1.0, 8.0);
    let bank_r = vec2(9.0, 2.0);
    let river = vec2(7.0, 1.0);
    let fish = vec2(5.0, 2.0);
    let money = vec2(2.0, 7.0);

    let rho_bank = density_from_ensemble(
        &Ensemble::from_weighted_states(vec![(1.0, bank_f.clone()), (1.0, bank_r.clone())])
            .map_err(err)?,
    );
    let m = rho_bank.matrix();
    println!(
        "rho_bank {:.2} {:.2} {:.2} {:.2}",
        m.get(0, 0),
        m.get(0, 1),
        m.get(1, 0),
        m.get(1, 1)
    );
    println!("entropy_bank {:.2}", rho_bank.entropy());
    println!("max_entropy {:.2}", 2.0f64.ln());

    let rho_river = DensityMatrix::pure(&river.normalized().expect("nonzero")).map_err(err)?;
    let composed =
        frobenius_compose_density(rho_river.matrix(), rho_bank.matrix()).map_err(err)?;
    println!(
        "rho_river_bank {:.2} {:.2} {:.2} {:.2}",
        composed.get(0, 0),
        composed.get(0, 1),
        composed.get(1, 0),
        composed.get(1, 1)
    );
    // Entropy of the raw composed operator, trace left as composed.
    println!("entropy_river_bank {:.2}", symmetric_entropy(&composed));

    let rho_fish = DensityMatrix::pure(&fish.normalized().expect("nonzero")).map_err(err)?;
    let rho_money = DensityMatrix::pure(&money.normalized().expect("nonzero")).map_err(err)?;
    println!(
        "sim_fish {:.2}",
        trace_similarity(&composed, rho_fish.matrix()).map_err(err)?
    );
    println!(
        "sim_money {:.2}",
        trace_similarity(&composed, rho_money.matrix()).map_err(err)?
    );

    // Baseline: plain multiplicative vectors with the merged ambiguous noun.
    let bank = bank_f.add(&bank_r).map_err(err)?;
    let river_bank = pointwise(&river, &bank).map_err(err)?;
    println!("cos_fish {:.2}", cosine(&river_bank, &fish).map_err(err)?);
    println!("cos_money {:.2}", cosine(&river_bank, &money).map_err(err)?);
    Ok(())
}

/// One-hot individuals and 0/1 relation matrices: composing by copying the
/// subject dimension is a test of set membership.
fn demo_truth() -> Result<(), String> {
    let subj = Vector::new(vec![0.0, 1.0, 0.0, 0.0]).expect("finite");
    let vp = Vector::new(vec![1.0, 1.0, 0.0, 1.0]).expect("finite");
    let membership = pointwise(&subj, &vp).map_err(err)?;
    let rendered: Vec<String> = membership.entries().iter().map(|x| format!("{x}")).collect();
    println!("membership {}", rendered.join(" "));

    // Sweep all 4x4 relations with at most 4 pairs set: the copy-subject
    // composition returns the subject one-hot iff the relation holds.
    fn sweep(
        next: usize,
        cells: usize,
        remaining: usize,
        set_bits: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize]),
    ) {
        visit(set_bits);
        if remaining == 0 {
            return;
        }
        for cell in next..cells {
            set_bits.push(cell);
            sweep(cell + 1, cells, remaining - 1, set_bits, visit);
            set_bits.pop();
        }
    }

    let n = 4usize;
    let mut relations = 0usize;
    let mut checks = 0usize;
    let mut failures = 0usize;
    let mut visit = |bits: &[usize]| {
        relations += 1;
        let mut relation = Matrix::zeros(n, n);
        for &bit in bits {
            relation.set(bit / n, bit % n, 1.0);
        }
        for i in 0..n {
            for j in 0..n {
                let s = Vector::basis(n, i);
                let o = Vector::basis(n, j);
                let out = compose::copy_subject(&s, &relation, &o).expect("dims match");
                let holds = relation.get(i, j) == 1.0;
                let expected = if holds { s } else { Vector::zeros(n) };
                checks += 1;
                if out != expected {
                    failures += 1;
                }
            }
        }
    };
    let mut set_bits: Vec<usize> = Vec::new();
    sweep(0, n * n, 4, &mut set_bits, &mut visit);
    println!("relations {relations}");
    println!("checks {checks}");
    println!("failures {failures}");
    if failures > 0 {
        return Err(format!("{failures} truth-theoretic checks failed"));
    }
    Ok(())
}
