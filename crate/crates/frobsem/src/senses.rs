//! Unsupervised word sense induction: hierarchical agglomerative clustering
//! over context vectors, with the variance ratio criterion picking where to
//! cut the dendrogram.
//!
//! The HAC here is the naive O(n^2)-O(n^3) formulation over an explicit
//! cluster list, which is plenty at desk scale. Ties break on the lowest
//! (a, b) cluster-id pair so every run of the same input produces the same
//! dendrogram. Ward's criterion runs on raw coordinates whatever the point
//! metric; the chosen metric matters again at disambiguation time, when
//! contexts are compared against centroids.

use crate::error::{Error, Result};
use crate::linalg::Vector;
use crate::semspace::{ContextVector, Token};
use std::collections::BTreeMap;
use std::fmt;
use std::io::BufRead;
use std::path::Path;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Linkage {
    Complete,
    Ward,
}

impl Linkage {
    pub fn name(self) -> &'static str {
        match self {
            Linkage::Complete => "COMPLETE",
            Linkage::Ward => "WARD",
        }
    }
}

impl FromStr for Linkage {
    type Err = ();
    fn from_str(s: &str) -> std::result::Result<Self, ()> {
        match s.to_ascii_uppercase().as_str() {
            "COMPLETE" => Ok(Linkage::Complete),
            "WARD" => Ok(Linkage::Ward),
            _ => Err(()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Metric {
    Euclidean,
    Cosine,
    Correlation,
}

impl Metric {
    pub fn name(self) -> &'static str {
        match self {
            Metric::Euclidean => "EUCLIDEAN",
            Metric::Cosine => "COSINE",
            Metric::Correlation => "CORRELATION",
        }
    }

    /// Point-to-point distance. Cosine distance is 1 - cos, correlation
    /// distance is 1 - Pearson r over the vector entries.
    pub fn distance(self, a: &Vector, b: &Vector) -> f64 {
        match self {
            Metric::Euclidean => a
                .entries()
                .iter()
                .zip(b.entries())
                .map(|(x, y)| (x - y) * (x - y))
                .sum::<f64>()
                .sqrt(),
            Metric::Cosine => 1.0 - crate::linalg::cosine(a, b).expect("equal dims"),
            Metric::Correlation => 1.0 - pearson(a, b),
        }
    }
}

impl FromStr for Metric {
    type Err = ();
    fn from_str(s: &str) -> std::result::Result<Self, ()> {
        match s.to_ascii_uppercase().as_str() {
            "EUCLIDEAN" => Ok(Metric::Euclidean),
            "COSINE" => Ok(Metric::Cosine),
            "CORRELATION" => Ok(Metric::Correlation),
            _ => Err(()),
        }
    }
}

/// Pearson correlation of the entries of two vectors. Constant vectors have
/// no direction after centering: two constants correlate perfectly, a
/// constant against anything else not at all.
fn pearson(a: &Vector, b: &Vector) -> f64 {
    let n = a.dim() as f64;
    let ma = a.sum() / n;
    let mb = b.sum() / n;
    let mut cov = 0.0;
    let mut va = 0.0;
    let mut vb = 0.0;
    for (x, y) in a.entries().iter().zip(b.entries()) {
        cov += (x - ma) * (y - mb);
        va += (x - ma) * (x - ma);
        vb += (y - mb) * (y - mb);
    }
    if va == 0.0 && vb == 0.0 {
        1.0
    } else if va == 0.0 || vb == 0.0 {
        0.0
    } else {
        cov / (va.sqrt() * vb.sqrt())
    }
}

/// One agglomeration step: clusters `a` and `b` merge at `height`.
/// Ids 0..n are the leaves; merge i creates cluster n+i.
#[derive(Debug, Clone, PartialEq)]
pub struct Merge {
    pub a: usize,
    pub b: usize,
    pub height: f64,
}

/// A stepwise dendrogram over `n` leaves; `merges` has length n-1.
#[derive(Debug, Clone, PartialEq)]
pub struct Dendrogram {
    pub n: usize,
    pub merges: Vec<Merge>,
}

/// Agglomerate `points` bottom-up under the given linkage and metric.
pub fn hac(points: &[Vector], linkage: Linkage, metric: Metric) -> Result<Dendrogram> {
    if points.len() < 2 {
        return Err(Error::TooFewPoints {
            needed: 2,
            got: points.len(),
        });
    }
    let n = points.len();

    struct Cluster {
        id: usize,
        members: Vec<usize>,
        centroid: Vector,
    }
    let mut active: Vec<Cluster> = points
        .iter()
        .enumerate()
        .map(|(i, p)| Cluster {
            id: i,
            members: vec![i],
            centroid: p.clone(),
        })
        .collect();

    let cluster_distance = |x: &Cluster, y: &Cluster| -> f64 {
        match linkage {
            // Distance between the two most remote elements.
            Linkage::Complete => {
                let mut worst = f64::NEG_INFINITY;
                for &i in &x.members {
                    for &j in &y.members {
                        worst = worst.max(metric.distance(&points[i], &points[j]));
                    }
                }
                worst
            }
            // Minimum increase in overall intra-cluster variance:
            // 2|X||Y|/(|X|+|Y|) · ||c_X - c_Y||^2 on raw coordinates.
            Linkage::Ward => {
                let nx = x.members.len() as f64;
                let ny = y.members.len() as f64;
                let gap = Metric::Euclidean.distance(&x.centroid, &y.centroid);
                2.0 * nx * ny / (nx + ny) * gap * gap
            }
        }
    };

    let mut merges = Vec::with_capacity(n - 1);
    for step in 0..n - 1 {
        let mut best: Option<(f64, usize, usize)> = None;
        for i in 0..active.len() {
            for j in i + 1..active.len() {
                let d = cluster_distance(&active[i], &active[j]);
                let lo = active[i].id.min(active[j].id);
                let hi = active[i].id.max(active[j].id);
                let better = match best {
                    None => true,
                    Some((bd, ba, bb)) => d < bd || (d == bd && (lo, hi) < (ba, bb)),
                };
                if better {
                    best = Some((d, lo, hi));
                }
            }
        }
        let (height, id_a, id_b) = best.expect("at least two active clusters");
        let pos_a = active.iter().position(|c| c.id == id_a).unwrap();
        let pos_b = active.iter().position(|c| c.id == id_b).unwrap();
        let (first, second) = (pos_a.min(pos_b), pos_a.max(pos_b));
        let cb = active.swap_remove(second);
        let ca = active.swap_remove(first);

        let mut members = ca.members;
        members.extend(cb.members);
        let mut centroid = Vector::zeros(points[0].dim());
        for &m in &members {
            centroid = centroid.add(&points[m]).expect("equal dims");
        }
        centroid = centroid.scale(1.0 / members.len() as f64);
        active.push(Cluster {
            id: n + step,
            members,
            centroid,
        });
        merges.push(Merge {
            a: id_a,
            b: id_b,
            height,
        });
    }
    Ok(Dendrogram { n, merges })
}

/// The k clusters left after undoing the last k-1 merges. Clusters are
/// listed by their smallest member, members in index order.
pub fn cut(d: &Dendrogram, k: usize) -> Result<Vec<Vec<usize>>> {
    if k < 1 || k > d.n {
        return Err(Error::BadK { k, n: d.n });
    }
    // Replay the first n-k merges over a forest of singletons.
    let mut clusters: BTreeMap<usize, Vec<usize>> = (0..d.n).map(|i| (i, vec![i])).collect();
    for (step, merge) in d.merges.iter().take(d.n - k).enumerate() {
        let mut a = clusters.remove(&merge.a).expect("merge input used once");
        let b = clusters.remove(&merge.b).expect("merge input used once");
        a.extend(b);
        clusters.insert(d.n + step, a);
    }
    let mut out: Vec<Vec<usize>> = clusters
        .into_values()
        .map(|mut members| {
            members.sort_unstable();
            members
        })
        .collect();
    out.sort_by_key(|members| members[0]);
    Ok(out)
}

/// Variance ratio criterion of a partition:
/// (Tr B / Tr W) · (N - k)/(k - 1), where W and B are the within- and
/// between-cluster dispersion matrices. Zero within-dispersion returns
/// +infinity.
pub fn vrc(points: &[Vector], partition: &[Vec<usize>]) -> Result<f64> {
    let n = points.len();
    let k = partition.len();
    if k < 2 || k > n.saturating_sub(1) {
        return Err(Error::BadK { k, n });
    }
    let dim = points[0].dim();
    let mut overall = Vector::zeros(dim);
    for p in points {
        overall = overall.add(p).expect("equal dims");
    }
    overall = overall.scale(1.0 / n as f64);

    let mut tr_w = 0.0;
    let mut tr_b = 0.0;
    for members in partition {
        let mut centroid = Vector::zeros(dim);
        for &m in members {
            centroid = centroid.add(&points[m]).expect("equal dims");
        }
        centroid = centroid.scale(1.0 / members.len() as f64);
        for &m in members {
            let d = Metric::Euclidean.distance(&points[m], &centroid);
            tr_w += d * d;
        }
        let d = Metric::Euclidean.distance(&centroid, &overall);
        tr_b += members.len() as f64 * d * d;
    }
    let factor = (n - k) as f64 / (k - 1) as f64;
    if tr_w == 0.0 {
        Ok(f64::INFINITY)
    } else {
        Ok(tr_b / tr_w * factor)
    }
}

pub const DEFAULT_K_RANGE: std::ops::RangeInclusive<usize> = 2..=10;

/// Pick the cut with the highest VRC over `k_range` (clamped to valid k);
/// ties go to the smallest k.
pub fn select_k(
    points: &[Vector],
    d: &Dendrogram,
    k_range: std::ops::RangeInclusive<usize>,
) -> Result<usize> {
    if points.len() < 3 {
        return Err(Error::TooFewPoints {
            needed: 3,
            got: points.len(),
        });
    }
    let lo = (*k_range.start()).max(2);
    let hi = (*k_range.end()).min(points.len() - 1);
    let mut best: Option<(f64, usize)> = None;
    for k in lo..=hi {
        let score = vrc(points, &cut(d, k)?)?;
        let better = match best {
            None => true,
            Some((bs, _)) => score > bs,
        };
        if better {
            best = Some((score, k));
        }
    }
    best.map(|(_, k)| k).ok_or(Error::BadK {
        k: lo,
        n: points.len(),
    })
}

/// Induced senses of one word: centroids plus the mapping from context ids
/// to sense indices.
#[derive(Debug, Clone, PartialEq)]
pub struct SenseInventory {
    pub word: Token,
    pub centroids: Vec<Vector>,
    pub membership: BTreeMap<String, usize>,
    pub metric: Metric,
    pub linkage: Linkage,
}

impl SenseInventory {
    pub fn k(&self) -> usize {
        self.centroids.len()
    }

    /// True when two centroids are closer than `tol` under the inventory's
    /// metric. A forced k=2 split of an unambiguous word shows up here.
    pub fn has_near_duplicate_centroids(&self, tol: f64) -> bool {
        for i in 0..self.centroids.len() {
            for j in i + 1..self.centroids.len() {
                if self.metric.distance(&self.centroids[i], &self.centroids[j]) < tol {
                    return true;
                }
            }
        }
        false
    }
}

impl fmt::Display for SenseInventory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({} senses)", self.word, self.k())
    }
}

/// Cluster a word's context vectors, select k by VRC, and record centroids
/// and memberships.
pub fn induce_senses(
    word: &Token,
    contexts: &[ContextVector],
    linkage: Linkage,
    metric: Metric,
) -> Result<SenseInventory> {
    if contexts.len() < 3 {
        return Err(Error::TooFewPoints {
            needed: 3,
            got: contexts.len(),
        });
    }
    let points: Vec<Vector> = contexts.iter().map(|c| c.vector.clone()).collect();
    let dendrogram = hac(&points, linkage, metric)?;
    let k = select_k(&points, &dendrogram, DEFAULT_K_RANGE)?;
    let partition = cut(&dendrogram, k)?;

    let dim = points[0].dim();
    let mut centroids = Vec::with_capacity(k);
    let mut membership = BTreeMap::new();
    for (sense, members) in partition.iter().enumerate() {
        let mut centroid = Vector::zeros(dim);
        for &m in members {
            centroid = centroid.add(&points[m]).expect("equal dims");
            membership.insert(contexts[m].source_id.clone(), sense);
        }
        centroids.push(centroid.scale(1.0 / members.len() as f64));
    }
    Ok(SenseInventory {
        word: word.clone(),
        centroids,
        membership,
        metric,
        linkage,
    })
}

const SENSES_MAGIC: &str = "frobsem-senses v1";

/// Append one inventory to a writer in the senses file format.
pub fn write_inventory<W: std::io::Write>(inv: &SenseInventory, out: &mut W) -> std::io::Result<()> {
    writeln!(
        out,
        "{SENSES_MAGIC} {} {} {} {}",
        inv.word,
        inv.k(),
        inv.metric.name(),
        inv.linkage.name()
    )?;
    for centroid in &inv.centroids {
        let entries: Vec<String> = centroid.entries().iter().map(|w| format!("{w}")).collect();
        writeln!(out, "{}", entries.join(" "))?;
    }
    for (context_id, sense) in &inv.membership {
        writeln!(out, "member {context_id} {sense}")?;
    }
    Ok(())
}

pub fn save_inventories(inventories: &[SenseInventory], path: &Path) -> Result<()> {
    let mut out = Vec::new();
    for inv in inventories {
        write_inventory(inv, &mut out).expect("write to Vec cannot fail");
    }
    std::fs::write(path, out).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn load_inventories(path: &Path) -> Result<Vec<SenseInventory>> {
    let bad = |line: usize, message: String| Error::Format {
        path: path.to_path_buf(),
        line,
        message,
    };
    let file = std::fs::File::open(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let mut inventories: Vec<SenseInventory> = Vec::new();
    let mut pending_centroids = 0usize;
    for (lineno, line) in std::io::BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|e| bad(lineno + 1, e.to_string()))?;
        if line.trim().is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix(SENSES_MAGIC) {
            let fields: Vec<&str> = rest.split_whitespace().collect();
            if fields.len() != 4 {
                return Err(bad(
                    lineno + 1,
                    "header needs `<word> <k> <metric> <linkage>`".into(),
                ));
            }
            let word = Token::parse(fields[0]).map_err(|e| bad(lineno + 1, e.to_string()))?;
            let k: usize = fields[1]
                .parse()
                .map_err(|_| bad(lineno + 1, format!("bad k `{}`", fields[1])))?;
            let metric: Metric = fields[2]
                .parse()
                .map_err(|_| bad(lineno + 1, format!("bad metric `{}`", fields[2])))?;
            let linkage: Linkage = fields[3]
                .parse()
                .map_err(|_| bad(lineno + 1, format!("bad linkage `{}`", fields[3])))?;
            inventories.push(SenseInventory {
                word,
                centroids: Vec::new(),
                membership: BTreeMap::new(),
                metric,
                linkage,
            });
            pending_centroids = k;
        } else if let Some(rest) = line.strip_prefix("member ") {
            let inv = inventories
                .last_mut()
                .ok_or_else(|| bad(lineno + 1, "member line before header".into()))?;
            let (context_id, sense_str) = rest
                .rsplit_once(' ')
                .ok_or_else(|| bad(lineno + 1, "expected `member <id> <sense>`".into()))?;
            let sense: usize = sense_str
                .parse()
                .map_err(|_| bad(lineno + 1, format!("bad sense `{sense_str}`")))?;
            if sense >= inv.k() {
                return Err(bad(lineno + 1, format!("sense {sense} out of range")));
            }
            inv.membership.insert(context_id.to_string(), sense);
        } else {
            let inv = inventories
                .last_mut()
                .ok_or_else(|| bad(lineno + 1, "centroid line before header".into()))?;
            if pending_centroids == 0 {
                return Err(bad(lineno + 1, "unexpected centroid line".into()));
            }
            let entries: Vec<f64> = line
                .split_whitespace()
                .map(|w| {
                    w.parse::<f64>()
                        .map_err(|_| bad(lineno + 1, format!("bad weight `{w}`")))
                })
                .collect::<Result<_>>()?;
            inv.centroids
                .push(Vector::new(entries).map_err(|e| bad(lineno + 1, e.to_string()))?);
            pending_centroids -= 1;
        }
    }
    Ok(inventories)
}
