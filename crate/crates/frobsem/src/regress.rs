//! Verb matrices trained by regularized multi-linear regression against
//! holistic phrase vectors, plus the joint two-matrix objectives for the
//! Frobenius additive decomposition.
//!
//! Training is deterministic: weights start at zero, rows are presented in
//! a fixed order (optionally shuffled once under a seed), and the descent
//! is full-batch with a backtracking line search that halves the step on
//! any loss increase and restores it after a successful epoch.

use crate::error::{Error, Result};
use crate::linalg::{matvec, pointwise, tensor_product, Matrix, Vector};
use rand::seq::SliceRandom;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Smallest step the line search will try before giving up on an epoch.
const MIN_LR: f64 = 1e-18;

#[derive(Debug, Clone)]
pub struct RegressionProblem {
    /// Argument vectors, one per training pair.
    pub inputs: Vec<Vector>,
    /// Holistic target vectors, aligned with `inputs`.
    pub targets: Vec<Vector>,
    pub lambda: f64,
    pub lr: f64,
    pub epochs: usize,
    pub seed: u64,
    pub shuffle: bool,
}

impl RegressionProblem {
    pub fn new(inputs: Vec<Vector>, targets: Vec<Vector>) -> Self {
        assert_eq!(inputs.len(), targets.len(), "inputs and targets must pair up");
        assert!(!inputs.is_empty(), "need at least one training pair");
        Self {
            inputs,
            targets,
            lambda: 0.0,
            lr: 0.5,
            epochs: 2000,
            seed: 0,
            shuffle: false,
        }
    }

    pub fn with_lambda(mut self, lambda: f64) -> Self {
        self.lambda = lambda;
        self
    }

    pub fn with_lr(mut self, lr: f64) -> Self {
        self.lr = lr;
        self
    }

    pub fn with_epochs(mut self, epochs: usize) -> Self {
        self.epochs = epochs;
        self
    }

    pub fn with_shuffle(mut self, seed: u64) -> Self {
        self.seed = seed;
        self.shuffle = true;
        self
    }

    fn row_order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.inputs.len()).collect();
        if self.shuffle {
            let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
            order.shuffle(&mut rng);
        }
        order
    }
}

#[derive(Debug, Clone)]
pub struct TrainedMatrix {
    pub matrix: Matrix,
    pub final_loss: f64,
    pub epochs_run: usize,
}

/// Loss (1/2m)(‖W Xᵀ − Yᵀ‖² + λ‖W‖²) and its gradient at `w`.
pub fn loss_and_gradient(p: &RegressionProblem, w: &Matrix, order: &[usize]) -> (f64, Matrix) {
    let m = p.inputs.len() as f64;
    let mut loss = 0.0;
    let mut grad = w.scale(p.lambda / m);
    for &i in order {
        let residual = matvec(w, &p.inputs[i])
            .expect("dims checked at construction")
            .add(&p.targets[i].scale(-1.0))
            .expect("dims checked at construction");
        loss += residual.dot(&residual).expect("same dim");
        grad = grad
            .add(&tensor_product(&residual, &p.inputs[i]).scale(1.0 / m))
            .expect("same shape");
    }
    loss = (loss + p.lambda * w.frobenius_norm().powi(2)) / (2.0 * m);
    (loss, grad)
}

/// Full-batch gradient descent from zero initialization.
pub fn train_matrix(p: &RegressionProblem) -> Result<TrainedMatrix> {
    let dim_in = p.inputs[0].dim();
    let dim_out = p.targets[0].dim();
    let order = p.row_order();
    let mut w = Matrix::zeros(dim_out, dim_in);
    let (mut loss, mut grad) = loss_and_gradient(p, &w, &order);
    let mut epochs_run = 0;
    for epoch in 0..p.epochs {
        if !loss.is_finite() {
            return Err(Error::Diverged { epoch });
        }
        // Backtracking: try the base step, halve until loss stops rising.
        let mut lr = p.lr;
        let (next_w, next_loss, next_grad) = loop {
            let candidate = w.sub(&grad.scale(lr))?;
            let (candidate_loss, candidate_grad) = loss_and_gradient(p, &candidate, &order);
            if candidate_loss.is_finite() && candidate_loss <= loss {
                break (candidate, candidate_loss, candidate_grad);
            }
            lr /= 2.0;
            if lr < MIN_LR {
                // The step has collapsed; treat as converged plateau.
                break (w.clone(), loss, grad.clone());
            }
        };
        epochs_run = epoch + 1;
        let stalled = (loss - next_loss).abs() <= 1e-18 * loss.max(1.0);
        w = next_w;
        loss = next_loss;
        grad = next_grad;
        if stalled {
            break;
        }
    }
    Ok(TrainedMatrix {
        matrix: w,
        final_loss: loss,
        epochs_run,
    })
}

/// Joint problem: learn (W_s, W_o) so that the per-row prediction
/// approximates the holistic sentence vector. With `pointwise_interaction`
/// the prediction is (W_s × subj) ⊙ obj + (W_o × obj) ⊙ subj, otherwise the
/// plain sum W_s × subj + W_o × obj.
#[derive(Debug, Clone)]
pub struct JointProblem {
    pub subjects: Vec<Vector>,
    pub objects: Vec<Vector>,
    pub targets: Vec<Vector>,
    pub pointwise_interaction: bool,
    pub lambda: f64,
    pub lr: f64,
    pub epochs: usize,
}

impl JointProblem {
    pub fn new(subjects: Vec<Vector>, objects: Vec<Vector>, targets: Vec<Vector>) -> Self {
        assert_eq!(subjects.len(), objects.len());
        assert_eq!(subjects.len(), targets.len());
        assert!(!subjects.is_empty());
        Self {
            subjects,
            objects,
            targets,
            pointwise_interaction: false,
            lambda: 0.0,
            lr: 0.5,
            epochs: 2000,
        }
    }

    pub fn pointwise(mut self) -> Self {
        self.pointwise_interaction = true;
        self
    }

    pub fn with_lambda(mut self, lambda: f64) -> Self {
        self.lambda = lambda;
        self
    }

    pub fn with_epochs(mut self, epochs: usize) -> Self {
        self.epochs = epochs;
        self
    }

    fn predict_row(&self, ws: &Matrix, wo: &Matrix, i: usize) -> Vector {
        let left = matvec(ws, &self.subjects[i]).expect("dims fixed");
        let right = matvec(wo, &self.objects[i]).expect("dims fixed");
        if self.pointwise_interaction {
            pointwise(&left, &self.objects[i])
                .expect("dims fixed")
                .add(&pointwise(&right, &self.subjects[i]).expect("dims fixed"))
                .expect("dims fixed")
        } else {
            left.add(&right).expect("dims fixed")
        }
    }
}

/// Loss and gradients of the joint objective at (ws, wo).
pub fn joint_loss_and_gradients(
    p: &JointProblem,
    ws: &Matrix,
    wo: &Matrix,
) -> (f64, Matrix, Matrix) {
    let m = p.subjects.len() as f64;
    let mut loss = 0.0;
    let mut grad_s = ws.scale(p.lambda / m);
    let mut grad_o = wo.scale(p.lambda / m);
    for i in 0..p.subjects.len() {
        let residual = p
            .predict_row(ws, wo, i)
            .add(&p.targets[i].scale(-1.0))
            .expect("dims fixed");
        loss += residual.dot(&residual).expect("same dim");
        if p.pointwise_interaction {
            // d/dW_s of (W_s subj) ⊙ obj contributes (residual ⊙ obj) subjᵀ.
            let rs = pointwise(&residual, &p.objects[i]).expect("dims fixed");
            let ro = pointwise(&residual, &p.subjects[i]).expect("dims fixed");
            grad_s = grad_s
                .add(&tensor_product(&rs, &p.subjects[i]).scale(1.0 / m))
                .expect("same shape");
            grad_o = grad_o
                .add(&tensor_product(&ro, &p.objects[i]).scale(1.0 / m))
                .expect("same shape");
        } else {
            grad_s = grad_s
                .add(&tensor_product(&residual, &p.subjects[i]).scale(1.0 / m))
                .expect("same shape");
            grad_o = grad_o
                .add(&tensor_product(&residual, &p.objects[i]).scale(1.0 / m))
                .expect("same shape");
        }
    }
    loss = (loss
        + p.lambda * (ws.frobenius_norm().powi(2) + wo.frobenius_norm().powi(2)))
        / (2.0 * m);
    (loss, grad_s, grad_o)
}

/// Jointly train both matrices from zero initialization; both are updated
/// each step.
pub fn train_joint(p: &JointProblem) -> Result<(TrainedMatrix, TrainedMatrix)> {
    let dim = p.targets[0].dim();
    let mut ws = Matrix::zeros(dim, p.subjects[0].dim());
    let mut wo = Matrix::zeros(dim, p.objects[0].dim());
    let (mut loss, mut gs, mut go) = joint_loss_and_gradients(p, &ws, &wo);
    let mut epochs_run = 0;
    for epoch in 0..p.epochs {
        if !loss.is_finite() {
            return Err(Error::Diverged { epoch });
        }
        let mut lr = p.lr;
        let (next_ws, next_wo, next) = loop {
            let cs = ws.sub(&gs.scale(lr))?;
            let co = wo.sub(&go.scale(lr))?;
            let candidate = joint_loss_and_gradients(p, &cs, &co);
            if candidate.0.is_finite() && candidate.0 <= loss {
                break (cs, co, candidate);
            }
            lr /= 2.0;
            if lr < MIN_LR {
                break (ws.clone(), wo.clone(), (loss, gs.clone(), go.clone()));
            }
        };
        epochs_run = epoch + 1;
        let stalled = (loss - next.0).abs() <= 1e-18 * loss.max(1.0);
        ws = next_ws;
        wo = next_wo;
        loss = next.0;
        gs = next.1;
        go = next.2;
        if stalled {
            break;
        }
    }
    Ok((
        TrainedMatrix {
            matrix: ws,
            final_loss: loss,
            epochs_run,
        },
        TrainedMatrix {
            matrix: wo,
            final_loss: loss,
            epochs_run,
        },
    ))
}

/// Apply a trained matrix to an argument vector.
pub fn predict(w: &Matrix, arg: &Vector) -> Result<Vector> {
    matvec(w, arg)
}

/// Read training pairs: one per line, `arg_vector<TAB>target_vector`,
/// entries space-separated.
pub fn read_training_pairs(path: &std::path::Path) -> Result<(Vec<Vector>, Vec<Vector>)> {
    let bad = |line: usize, message: String| Error::Format {
        path: path.to_path_buf(),
        line,
        message,
    };
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let mut inputs = Vec::new();
    let mut targets = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let (arg_str, target_str) = line
            .split_once('\t')
            .ok_or_else(|| bad(lineno + 1, "expected `arg<TAB>target`".into()))?;
        let parse_vec = |s: &str| -> Result<Vector> {
            let entries: Vec<f64> = s
                .split_whitespace()
                .map(|w| {
                    w.parse::<f64>()
                        .map_err(|_| bad(lineno + 1, format!("bad number `{w}`")))
                })
                .collect::<Result<_>>()?;
            Vector::new(entries).map_err(|e| bad(lineno + 1, e.to_string()))
        };
        inputs.push(parse_vec(arg_str)?);
        targets.push(parse_vec(target_str)?);
    }
    if inputs.is_empty() {
        return Err(bad(1, "no training pairs".into()));
    }
    Ok((inputs, targets))
}
