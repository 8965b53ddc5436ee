//! Density-matrix semantics: ambiguous words as mixed states over their
//! sense vectors, similarity by trace of the operator product, composition
//! by partial trace (full tensors) or point-wise product (Frobenius), and
//! ambiguity measured by Von Neumann entropy.
//!
//! Everything is real and symmetric: semantic spaces are built over real
//! weights, so self-adjoint means symmetric and all eigenvalues are real.
//! Eigenvalues come from cyclic Jacobi rotations, which are deterministic
//! and entirely adequate at the dimensions a desk-scale space needs.
//!
//! Composition outputs are returned unnormalized with their trace attached;
//! renormalization is an explicit opt-in, because the ambiguity demo in the
//! source material measures entropy and similarity on the raw composed
//! operator.

use crate::error::{Error, Result};
use crate::linalg::{pointwise_matrix, Matrix, Vector};
use std::io::BufRead;
use std::path::Path;

const SYMMETRY_TOL: f64 = 1e-10;
const TRACE_TOL: f64 = 1e-9;
const EIGEN_TOL: f64 = 1e-9;
const JACOBI_OFF_TOL: f64 = 1e-12;
const JACOBI_MAX_SWEEPS: usize = 64;

/// A statistical ensemble of pure states: unit vectors with probabilities
/// summing to one.
#[derive(Debug, Clone)]
pub struct Ensemble {
    members: Vec<(f64, Vector)>,
}

impl Ensemble {
    pub fn new(members: Vec<(f64, Vector)>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::BadEnsemble("no members".into()));
        }
        let dim = members[0].1.dim();
        let mut total = 0.0;
        for (p, state) in &members {
            if *p <= 0.0 || !p.is_finite() {
                return Err(Error::BadEnsemble(format!("probability {p} not in (0,1]")));
            }
            if state.dim() != dim {
                return Err(Error::BadEnsemble("states differ in dimension".into()));
            }
            if (state.norm() - 1.0).abs() > TRACE_TOL {
                return Err(Error::BadEnsemble(format!(
                    "state norm {} is not 1",
                    state.norm()
                )));
            }
            total += p;
        }
        if (total - 1.0).abs() > TRACE_TOL {
            return Err(Error::BadEnsemble(format!("probabilities sum to {total}")));
        }
        Ok(Self { members })
    }

    /// Build from raw (weight, vector) pairs: vectors are normalized to unit
    /// length and weights to a distribution.
    pub fn from_weighted_states(weighted: Vec<(f64, Vector)>) -> Result<Self> {
        let total: f64 = weighted.iter().map(|(w, _)| w).sum();
        if total <= 0.0 {
            return Err(Error::BadEnsemble("weights sum to zero".into()));
        }
        let members = weighted
            .into_iter()
            .map(|(w, v)| {
                let unit = v
                    .normalized()
                    .ok_or_else(|| Error::BadEnsemble("zero state vector".into()))?;
                Ok((w / total, unit))
            })
            .collect::<Result<Vec<_>>>()?;
        Ensemble::new(members)
    }

    /// Uniform mixture of the given states.
    pub fn uniform(states: Vec<Vector>) -> Result<Self> {
        let n = states.len();
        Ensemble::from_weighted_states(states.into_iter().map(|v| (1.0, v)).collect())
            .map_err(|e| match e {
                Error::BadEnsemble(msg) => Error::BadEnsemble(format!("{msg} (of {n} states)")),
                other => other,
            })
    }

    pub fn members(&self) -> &[(f64, Vector)] {
        &self.members
    }
}

/// A square, symmetric, unit-trace, positive-semidefinite operator.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    entries: Matrix,
}

impl DensityMatrix {
    /// Validate symmetry, unit trace and positive semidefiniteness.
    pub fn new(entries: Matrix) -> Result<Self> {
        if !entries.is_square() {
            return Err(Error::NotSquare {
                rows: entries.rows(),
                cols: entries.cols(),
            });
        }
        for i in 0..entries.rows() {
            for j in i + 1..entries.cols() {
                if (entries.get(i, j) - entries.get(j, i)).abs() > SYMMETRY_TOL {
                    return Err(Error::BadEnsemble(format!(
                        "not symmetric at ({i},{j})"
                    )));
                }
            }
        }
        let trace = entries.trace()?;
        if (trace - 1.0).abs() > TRACE_TOL {
            return Err(Error::BadEnsemble(format!("trace {trace} is not 1")));
        }
        if jacobi_eigenvalues(&entries).into_iter().any(|e| e < -EIGEN_TOL) {
            return Err(Error::BadEnsemble("negative eigenvalue".into()));
        }
        Ok(Self { entries })
    }

    /// ρ = |ψ⟩⟨ψ| for a unit vector.
    pub fn pure(state: &Vector) -> Result<Self> {
        let norm = state.norm();
        if (norm - 1.0).abs() > TRACE_TOL {
            return Err(Error::NotNormalized { norm });
        }
        Ok(Self {
            entries: crate::linalg::tensor_product(state, state),
        })
    }

    pub fn dim(&self) -> usize {
        self.entries.rows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.entries
    }

    pub fn entropy(&self) -> f64 {
        symmetric_entropy(&self.entries)
    }
}

/// ρ(w) = Σ pᵢ |sᵢ⟩⟨sᵢ|.
pub fn density_from_ensemble(ensemble: &Ensemble) -> DensityMatrix {
    let dim = ensemble.members()[0].1.dim();
    let mut acc = Matrix::zeros(dim, dim);
    for (p, state) in ensemble.members() {
        acc = acc
            .add(&crate::linalg::tensor_product(state, state).scale(*p))
            .expect("same shape");
    }
    DensityMatrix { entries: acc }
}

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, sorted
/// descending. Convergence: off-diagonal Frobenius norm below 1e-12
/// (relative to the matrix scale).
pub fn jacobi_eigenvalues(m: &Matrix) -> Vec<f64> {
    assert!(m.is_square(), "Jacobi needs a square symmetric matrix");
    let n = m.rows();
    let mut a = m.clone();
    let scale = m.frobenius_norm().max(1.0);
    for _ in 0..JACOBI_MAX_SWEEPS {
        let mut off = 0.0;
        for i in 0..n {
            for j in i + 1..n {
                off += 2.0 * a.get(i, j) * a.get(i, j);
            }
        }
        if off.sqrt() <= JACOBI_OFF_TOL * scale {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a.get(p, q);
                if apq.abs() <= f64::MIN_POSITIVE {
                    continue;
                }
                let app = a.get(p, p);
                let aqq = a.get(q, q);
                let theta = (aqq - app) / (2.0 * apq);
                // Stable tangent of the rotation angle.
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a.get(k, p);
                    let akq = a.get(k, q);
                    a.set(k, p, c * akp - s * akq);
                    a.set(k, q, s * akp + c * akq);
                }
                for k in 0..n {
                    let apk = a.get(p, k);
                    let aqk = a.get(q, k);
                    a.set(p, k, c * apk - s * aqk);
                    a.set(q, k, s * apk + c * aqk);
                }
            }
        }
    }
    let mut eigenvalues: Vec<f64> = (0..n).map(|i| a.get(i, i)).collect();
    eigenvalues.sort_by(|x, y| y.partial_cmp(x).expect("finite eigenvalues"));
    eigenvalues
}

/// Von Neumann entropy −Σ eᵢ ln eᵢ of a symmetric PSD operator (0·ln 0 = 0).
/// Eigenvalues in [−1e-9, 0) are clamped to zero before taking logs.
pub fn symmetric_entropy(m: &Matrix) -> f64 {
    jacobi_eigenvalues(m)
        .into_iter()
        .map(|e| if (-EIGEN_TOL..0.0).contains(&e) { 0.0 } else { e })
        .filter(|&e| e > 0.0)
        .map(|e| -e * e.ln())
        .sum()
}

/// Von Neumann entropy of a density matrix.
pub fn vn_entropy(rho: &DensityMatrix) -> f64 {
    rho.entropy()
}

/// Build an ensemble from a sense inventory: states are the normalized
/// centroids; probabilities follow cluster sizes, or are uniform when
/// requested (or when no membership was recorded).
pub fn ensemble_from_inventory(
    inventory: &crate::senses::SenseInventory,
    uniform: bool,
) -> Result<Ensemble> {
    let k = inventory.k();
    let mut weights = vec![0.0f64; k];
    if uniform || inventory.membership.is_empty() {
        weights.fill(1.0);
    } else {
        for &sense in inventory.membership.values() {
            weights[sense] += 1.0;
        }
    }
    let weighted: Vec<(f64, Vector)> = inventory
        .centroids
        .iter()
        .zip(weights)
        .filter(|&(_, w)| w > 0.0)
        .map(|(c, w)| (w, c.clone()))
        .collect();
    Ensemble::from_weighted_states(weighted)
}

/// Tr(ρ₂† ρ₁); for symmetric operators this is the entrywise dot product.
pub fn trace_similarity(a: &Matrix, b: &Matrix) -> Result<f64> {
    if a.rows() != b.rows() || a.cols() != b.cols() {
        return Err(Error::DimensionMismatch {
            context: "trace similarity",
            left: a.rows(),
            right: b.rows(),
        });
    }
    Ok(a.entries()
        .iter()
        .zip(b.entries())
        .map(|(x, y)| x * y)
        .sum())
}

/// Frobenius composition of density matrices: the point-wise product,
/// returned unnormalized.
pub fn frobenius_compose_density(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    pointwise_matrix(a, b)
}

/// Divide an operator by its trace to restore unit trace.
pub fn renormalize(m: &Matrix) -> Result<DensityMatrix> {
    let trace = m.trace()?;
    if trace.abs() <= 1e-12 {
        return Err(Error::ZeroTrace { trace });
    }
    DensityMatrix::new(m.scale(1.0 / trace))
}

/// A composed operator, kept unnormalized, with its trace attached.
#[derive(Debug, Clone)]
pub struct ComposedOperator {
    pub operator: Matrix,
    pub trace: f64,
}

impl ComposedOperator {
    fn from_matrix(operator: Matrix) -> Self {
        let trace = operator.trace().expect("partial trace output is square");
        Self { operator, trace }
    }

    pub fn entropy(&self) -> f64 {
        symmetric_entropy(&self.operator)
    }

    pub fn renormalized(&self) -> Result<DensityMatrix> {
        renormalize(&self.operator)
    }
}

/// Intransitive composition ρ_IN = Tr_N(ρ(v) ∘ (ρ(s) ⊗ 1_S)): the verb
/// operator lives on N⊗S with the subject factor first; the partial trace
/// destroys N and leaves an operator on S.
pub fn compose_intransitive(
    verb: &Matrix,
    subj: &DensityMatrix,
) -> Result<ComposedOperator> {
    let n = subj.dim();
    let expect = n * n;
    if verb.rows() != expect || verb.cols() != expect {
        return Err(Error::DimensionMismatch {
            context: "intransitive composition",
            left: verb.rows(),
            right: expect,
        });
    }
    // M = verb · (subj ⊗ I); out[s][s'] = Σ_a M[(a,s)][(a,s')]
    //   = Σ_{a,b} verb[(a,s)][(b,s')] · subj[b][a].
    let mut out = Matrix::zeros(n, n);
    for s in 0..n {
        for sp in 0..n {
            let mut acc = 0.0;
            for a in 0..n {
                for b in 0..n {
                    acc += verb.get(a * n + s, b * n + sp) * subj.matrix().get(b, a);
                }
            }
            out.set(s, sp, acc);
        }
    }
    Ok(ComposedOperator::from_matrix(out))
}

/// Adjective-noun composition ρ_AN = Tr_right(ρ(adj) ∘ (1_N ⊗ ρ(n))): the
/// adjective operator lives on N⊗N with the result factor first.
pub fn compose_adjective(adj: &Matrix, noun: &DensityMatrix) -> Result<ComposedOperator> {
    let n = noun.dim();
    let expect = n * n;
    if adj.rows() != expect || adj.cols() != expect {
        return Err(Error::DimensionMismatch {
            context: "adjective composition",
            left: adj.rows(),
            right: expect,
        });
    }
    // out[i][i'] = Σ_{j,l} adj[(i,j)][(i',l)] · noun[l][j].
    let mut out = Matrix::zeros(n, n);
    for i in 0..n {
        for ip in 0..n {
            let mut acc = 0.0;
            for j in 0..n {
                for l in 0..n {
                    acc += adj.get(i * n + j, ip * n + l) * noun.matrix().get(l, j);
                }
            }
            out.set(i, ip, acc);
        }
    }
    Ok(ComposedOperator::from_matrix(out))
}

/// Transitive composition ρ_TS = Tr_{N,N}(ρ(v) ∘ (ρ(s) ⊗ 1_S ⊗ ρ(o))): the
/// verb operator lives on N⊗S⊗N with axis order (subject, sentence, object).
pub fn compose_transitive(
    verb: &Matrix,
    subj: &DensityMatrix,
    obj: &DensityMatrix,
) -> Result<ComposedOperator> {
    let n = subj.dim();
    if obj.dim() != n {
        return Err(Error::DimensionMismatch {
            context: "transitive composition",
            left: n,
            right: obj.dim(),
        });
    }
    let expect = n * n * n;
    if verb.rows() != expect || verb.cols() != expect {
        return Err(Error::DimensionMismatch {
            context: "transitive composition",
            left: verb.rows(),
            right: expect,
        });
    }
    let idx = |a: usize, s: usize, b: usize| (a * n + s) * n + b;
    // out[s][s'] = Σ_{a,c,b,d} verb[(a,s,b)][(c,s',d)] · subj[c][a] · obj[d][b].
    let mut out = Matrix::zeros(n, n);
    for s in 0..n {
        for sp in 0..n {
            let mut acc = 0.0;
            for a in 0..n {
                for c in 0..n {
                    let ps = subj.matrix().get(c, a);
                    if ps == 0.0 {
                        continue;
                    }
                    for b in 0..n {
                        for dd in 0..n {
                            acc += verb.get(idx(a, s, b), idx(c, sp, dd))
                                * ps
                                * obj.matrix().get(dd, b);
                        }
                    }
                }
            }
            out.set(s, sp, acc);
        }
    }
    Ok(ComposedOperator::from_matrix(out))
}

/// Entanglement of a pure bipartite state: the Von Neumann entropy of the
/// reduced operator over the first factor.
pub fn entanglement_pure(psi: &Vector, dim_a: usize, dim_b: usize) -> Result<f64> {
    if psi.dim() != dim_a * dim_b {
        return Err(Error::DimensionMismatch {
            context: "pure-state entanglement",
            left: psi.dim(),
            right: dim_a * dim_b,
        });
    }
    let norm = psi.norm();
    if (norm - 1.0).abs() > TRACE_TOL {
        return Err(Error::NotNormalized { norm });
    }
    // ρ_A[i][i'] = Σ_j ψ[(i,j)] ψ[(i',j)].
    let mut reduced = Matrix::zeros(dim_a, dim_a);
    for i in 0..dim_a {
        for ip in 0..dim_a {
            let mut acc = 0.0;
            for j in 0..dim_b {
                acc += psi.get(i * dim_b + j) * psi.get(ip * dim_b + j);
            }
            reduced.set(i, ip, acc);
        }
    }
    Ok(symmetric_entropy(&reduced))
}

const DM_MAGIC: &str = "frobsem-dm v1";

pub fn save_density_matrix(dm: &DensityMatrix, path: &Path) -> Result<()> {
    let mut out = format!("{DM_MAGIC} {}\n", dm.dim());
    for i in 0..dm.dim() {
        let row: Vec<String> = (0..dm.dim())
            .map(|j| format!("{}", dm.matrix().get(i, j)))
            .collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    std::fs::write(path, out).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn load_density_matrix(path: &Path) -> Result<DensityMatrix> {
    let bad = |line: usize, message: String| Error::Format {
        path: path.to_path_buf(),
        line,
        message,
    };
    let file = std::fs::File::open(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let mut lines = std::io::BufReader::new(file).lines().enumerate();
    let header = lines
        .next()
        .ok_or_else(|| bad(1, "empty file".into()))?
        .1
        .map_err(|e| bad(1, e.to_string()))?;
    let rest = header
        .strip_prefix(DM_MAGIC)
        .ok_or_else(|| bad(1, format!("bad header `{header}`")))?;
    let dim: usize = rest
        .trim()
        .parse()
        .map_err(|_| bad(1, format!("bad dim `{rest}`")))?;
    let mut entries = Vec::with_capacity(dim * dim);
    let mut rows = 0usize;
    for (lineno, line) in lines {
        let line = line.map_err(|e| bad(lineno + 1, e.to_string()))?;
        if line.trim().is_empty() {
            continue;
        }
        let row: Vec<f64> = line
            .split_whitespace()
            .map(|w| {
                w.parse::<f64>()
                    .map_err(|_| bad(lineno + 1, format!("bad number `{w}`")))
            })
            .collect::<Result<_>>()?;
        if row.len() != dim {
            return Err(bad(lineno + 1, format!("{} entries, expected {dim}", row.len())));
        }
        entries.extend(row);
        rows += 1;
    }
    if rows != dim {
        return Err(bad(rows + 1, format!("{rows} rows, expected {dim}")));
    }
    DensityMatrix::new(Matrix::new(dim, dim, entries).map_err(|e| bad(2, e.to_string()))?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::tensor_product;

    fn vec2(a: f64, b: f64) -> Vector {
        Vector::new(vec![a, b]).unwrap()
    }

    fn unit(a: f64, b: f64) -> Vector {
        vec2(a, b).normalized().unwrap()
    }

    /// The two-dimensional finance/water demo vectors.
    fn demo_bank() -> DensityMatrix {
        let ensemble = Ensemble::from_weighted_states(vec![
            (1.0, vec2(1.0, 8.0)),
            (1.0, vec2(9.0, 2.0)),
        ])
        .unwrap();
        density_from_ensemble(&ensemble)
    }

    #[test]
    fn demo_density_matrix_values() {
        let rho = demo_bank();
        let m = rho.matrix();
        assert!((m.get(0, 0) - 0.48).abs() < 0.01);
        assert!((m.get(0, 1) - 0.17).abs() < 0.01);
        assert!((m.get(1, 0) - 0.17).abs() < 0.01);
        assert!((m.get(1, 1) - 0.52).abs() < 0.01);
    }

    #[test]
    fn pure_state_density() {
        let rho = DensityMatrix::pure(&Vector::basis(2, 0)).unwrap();
        assert_eq!(rho.matrix().entries(), &[1.0, 0.0, 0.0, 0.0]);
        assert!(DensityMatrix::pure(&vec2(1.0, 1.0)).is_err());
    }

    #[test]
    fn uniform_over_basis_is_maximally_mixed() {
        let rho = density_from_ensemble(
            &Ensemble::uniform(vec![Vector::basis(2, 0), Vector::basis(2, 1)]).unwrap(),
        );
        assert_eq!(rho.matrix().entries(), &[0.5, 0.0, 0.0, 0.5]);
        assert!((rho.entropy() - 2.0f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn bad_ensembles_are_rejected() {
        assert!(Ensemble::new(vec![]).is_err());
        assert!(Ensemble::new(vec![(0.5, Vector::basis(2, 0))]).is_err());
        assert!(Ensemble::new(vec![(1.0, vec2(2.0, 0.0))]).is_err());
        assert!(Ensemble::new(vec![(-0.2, Vector::basis(2, 0)), (1.2, Vector::basis(2, 1))])
            .is_err());
    }

    #[test]
    fn demo_entropy_values() {
        let rho = demo_bank();
        assert!((rho.entropy() - 0.64).abs() < 0.01);
        let pure = DensityMatrix::pure(&unit(3.0, 4.0)).unwrap();
        assert!(pure.entropy().abs() < 1e-9);
    }

    #[test]
    fn demo_composition_and_similarity() {
        let rho_bank = demo_bank();
        let river = DensityMatrix::pure(&unit(7.0, 1.0)).unwrap();
        let composed = frobenius_compose_density(river.matrix(), rho_bank.matrix()).unwrap();
        assert!((composed.get(0, 0) - 0.47).abs() < 0.01);
        assert!((composed.get(0, 1) - 0.02).abs() < 0.01);
        assert!((composed.get(1, 1) - 0.01).abs() < 0.01);
        // Entropy measured on the raw (unnormalized) composed operator.
        assert!((symmetric_entropy(&composed) - 0.40).abs() < 0.01);

        let fish = DensityMatrix::pure(&unit(5.0, 2.0)).unwrap();
        let money = DensityMatrix::pure(&unit(2.0, 7.0)).unwrap();
        assert!((trace_similarity(&composed, fish.matrix()).unwrap() - 0.43).abs() < 0.01);
        assert!((trace_similarity(&composed, money.matrix()).unwrap() - 0.06).abs() < 0.01);
    }

    #[test]
    fn pointwise_ones_and_orthogonal_cases() {
        let rho = demo_bank();
        let ones = Matrix::ones(2, 2);
        let same = frobenius_compose_density(rho.matrix(), &ones).unwrap();
        assert_eq!(&same, rho.matrix());

        let e1 = DensityMatrix::pure(&Vector::basis(2, 0)).unwrap();
        let e2 = DensityMatrix::pure(&Vector::basis(2, 1)).unwrap();
        let zero = frobenius_compose_density(e1.matrix(), e2.matrix()).unwrap();
        assert!(zero.is_zero());
        assert!(matches!(renormalize(&zero), Err(Error::ZeroTrace { .. })));
    }

    #[test]
    fn purity_trace_is_one_for_pure_states() {
        let rho = DensityMatrix::pure(&unit(1.0, 3.0)).unwrap();
        let sim = trace_similarity(rho.matrix(), rho.matrix()).unwrap();
        assert!((sim - 1.0).abs() < 1e-12);
    }

    fn pure_on_composite(psi: &Vector) -> Matrix {
        tensor_product(psi, psi)
    }

    #[test]
    fn intransitive_partial_trace_cases() {
        // verb = |e1⊗e1⟩⟨e1⊗e1| on N⊗S.
        let verb = pure_on_composite(&Vector::basis(4, 0));
        let subj = DensityMatrix::pure(&Vector::basis(2, 0)).unwrap();
        let out = compose_intransitive(&verb, &subj).unwrap();
        assert_eq!(out.operator.entries(), &[1.0, 0.0, 0.0, 0.0]);
        assert!((out.trace - 1.0).abs() < 1e-12);

        let ortho = DensityMatrix::pure(&Vector::basis(2, 1)).unwrap();
        let out = compose_intransitive(&verb, &ortho).unwrap();
        assert!(out.operator.is_zero());

        let mixed = DensityMatrix::new(Matrix::from_rows(&[&[0.5, 0.0], &[0.0, 0.5]]).unwrap())
            .unwrap();
        let out = compose_intransitive(&verb, &mixed).unwrap();
        assert_eq!(out.operator.entries(), &[0.5, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn adjective_partial_trace_case() {
        // adjective = |e1⊗e2⟩⟨e1⊗e2| on N⊗N, noun = |e2⟩⟨e2|.
        let adj = pure_on_composite(&Vector::basis(4, 1));
        let noun = DensityMatrix::pure(&Vector::basis(2, 1)).unwrap();
        let out = compose_adjective(&adj, &noun).unwrap();
        assert_eq!(out.operator.entries(), &[1.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn transitive_partial_trace_cases() {
        // verb = |e1⊗e2⊗e1⟩⟨·| on N⊗S⊗N; index (0,1,0) is slot 2.
        let verb = pure_on_composite(&Vector::basis(8, 2));
        let e1 = DensityMatrix::pure(&Vector::basis(2, 0)).unwrap();
        let out = compose_transitive(&verb, &e1, &e1).unwrap();
        assert_eq!(out.operator.entries(), &[0.0, 0.0, 0.0, 1.0]);

        let e2 = DensityMatrix::pure(&Vector::basis(2, 1)).unwrap();
        let mismatched = compose_transitive(&verb, &e2, &e1).unwrap();
        assert!(mismatched.operator.is_zero());
    }

    /// Full 4-index contraction Tr(ρ_v · (ρ_s ⊗ 1)) as an independent check
    /// on the partial-trace trace.
    fn brute_force_trace(verb: &Matrix, subj: &Matrix) -> f64 {
        let n = subj.rows();
        let mut acc = 0.0;
        for a in 0..n {
            for s in 0..n {
                for b in 0..n {
                    for sp in 0..n {
                        // (ρ_s ⊗ 1)[(b,sp)][(a,s)] = subj[b][a] · δ(sp,s)
                        if sp == s {
                            acc += verb.get(a * n + s, b * n + sp) * subj.get(b, a);
                        }
                    }
                }
            }
        }
        acc
    }

    #[test]
    fn partial_trace_matches_brute_force_and_is_linear() {
        use rand::Rng;
        use rand_chacha::rand_core::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        for n in 2..=3usize {
            for _ in 0..20 {
                let mut rand_dm = |dim: usize| {
                    let states: Vec<Vector> = (0..2)
                        .map(|_| {
                            Vector::new((0..dim).map(|_| rng.random_range(-1.0..1.0)).collect())
                                .unwrap()
                                .normalized()
                                .unwrap()
                        })
                        .collect();
                    density_from_ensemble(&Ensemble::uniform(states).unwrap())
                };
                let verb_seed = rand_dm(n * n);
                let subj = rand_dm(n);
                let out = compose_intransitive(verb_seed.matrix(), &subj).unwrap();
                let expect = brute_force_trace(verb_seed.matrix(), subj.matrix());
                assert!((out.trace - expect).abs() < 1e-10);

                // Linearity in the subject argument.
                let subj2 = rand_dm(n);
                let half = DensityMatrix::new(
                    subj.matrix()
                        .scale(0.5)
                        .add(&subj2.matrix().scale(0.5))
                        .unwrap(),
                )
                .unwrap();
                let mixed = compose_intransitive(verb_seed.matrix(), &half).unwrap();
                let a = compose_intransitive(verb_seed.matrix(), &subj).unwrap();
                let b = compose_intransitive(verb_seed.matrix(), &subj2).unwrap();
                let combined = a.operator.scale(0.5).add(&b.operator.scale(0.5)).unwrap();
                assert!(mixed.operator.sub(&combined).unwrap().frobenius_norm() < 1e-10);
            }
        }
    }

    #[test]
    fn entanglement_pure_cases() {
        let bell = Vector::new(vec![1.0, 0.0, 0.0, 1.0])
            .unwrap()
            .normalized()
            .unwrap();
        assert!((entanglement_pure(&bell, 2, 2).unwrap() - 2.0f64.ln()).abs() < 1e-9);

        let a = unit(1.0, 2.0);
        let b = unit(3.0, -1.0);
        let product = Vector::new(
            (0..4)
                .map(|i| a.get(i / 2) * b.get(i % 2))
                .collect::<Vec<_>>(),
        )
        .unwrap();
        assert!(entanglement_pure(&product, 2, 2).unwrap() < 1e-9);

        let skew = Vector::new(vec![0.8f64.sqrt(), 0.0, 0.0, 0.2f64.sqrt()]).unwrap();
        let expect = -(0.8f64 * 0.8f64.ln() + 0.2 * 0.2f64.ln());
        assert!((entanglement_pure(&skew, 2, 2).unwrap() - expect).abs() < 1e-9);
    }

    #[test]
    fn entropy_bounds_and_purity() {
        use rand::Rng;
        use rand_chacha::rand_core::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for dim in 2..=8usize {
            for _ in 0..10 {
                let k = rng.random_range(1..4);
                let states: Vec<Vector> = (0..k)
                    .map(|_| {
                        Vector::new((0..dim).map(|_| rng.random_range(-1.0..1.0)).collect())
                            .unwrap()
                            .normalized()
                            .unwrap()
                    })
                    .collect();
                let rho = density_from_ensemble(&Ensemble::uniform(states).unwrap());
                // Always a valid density matrix.
                assert!(DensityMatrix::new(rho.matrix().clone()).is_ok());
                let s = rho.entropy();
                assert!(s >= -1e-9 && s <= (dim as f64).ln() + 1e-9);
                let purity = trace_similarity(rho.matrix(), rho.matrix()).unwrap();
                if s.abs() < 1e-9 {
                    assert!((purity - 1.0).abs() < 1e-8);
                }
                if (purity - 1.0).abs() < 1e-10 {
                    assert!(s < 1e-8);
                }
            }
        }
    }

    #[test]
    fn inventory_ensembles_follow_cluster_sizes() {
        use crate::semspace::Token;
        use crate::senses::{Linkage, Metric, SenseInventory};
        let mut membership = std::collections::BTreeMap::new();
        for (id, sense) in [("0", 0usize), ("1", 0), ("2", 0), ("3", 1)] {
            membership.insert(id.to_string(), sense);
        }
        let inventory = SenseInventory {
            word: Token::parse("bank_NOUN").unwrap(),
            centroids: vec![vec2(1.0, 8.0), vec2(9.0, 2.0)],
            membership,
            metric: Metric::Cosine,
            linkage: Linkage::Ward,
        };
        let sized = ensemble_from_inventory(&inventory, false).unwrap();
        assert!((sized.members()[0].0 - 0.75).abs() < 1e-12);
        assert!((sized.members()[1].0 - 0.25).abs() < 1e-12);
        let uniform = ensemble_from_inventory(&inventory, true).unwrap();
        assert!((uniform.members()[0].0 - 0.5).abs() < 1e-12);
        // The uniform mixture over these centroids is the half/half bank
        // state of the walkthrough.
        let rho = density_from_ensemble(&uniform);
        let demo = demo_bank();
        assert!((vn_entropy(&rho) - demo.entropy()).abs() < 1e-12);
        assert!(rho
            .matrix()
            .sub(demo.matrix())
            .unwrap()
            .frobenius_norm()
            < 1e-12);
    }

    #[test]
    fn jacobi_matches_hand_eigenvalues() {
        let m = Matrix::from_rows(&[&[2.0, 1.0], &[1.0, 2.0]]).unwrap();
        let eigenvalues = jacobi_eigenvalues(&m);
        assert!((eigenvalues[0] - 3.0).abs() < 1e-12);
        assert!((eigenvalues[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn density_matrix_file_roundtrip() {
        let rho = demo_bank();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("dm.txt");
        save_density_matrix(&rho, &path).unwrap();
        let loaded = load_density_matrix(&path).unwrap();
        assert_eq!(&rho, &loaded);

        std::fs::write(&path, "frobsem-dm v1 2\n1 0\n").unwrap();
        assert!(matches!(load_density_matrix(&path), Err(Error::Format { .. })));
    }
}
