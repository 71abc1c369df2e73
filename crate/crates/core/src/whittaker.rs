//! Whittaker modules `V_{a,θ}` (Verma modules at `n = 0`) and the trivial module.
//!
//! `V_{a,θ}` is induced from the character `d_i ↦ a_i` (`n ≤ i ≤ 2n`),
//! `d_i ↦ 0` (`i > 2n`) of `span{d_i | i ≥ n}`. Its basis is the set of PBW
//! words with every index at most `n − 1`, applied to the cyclic vector `𝟙`.
//!
//! Words are graded by `Σ (n − j)` over their letters, which is the level
//! `−Σ j` when `n = 0`. Every letter has grade at least 1, so each grade
//! holds finitely many words.

use serde::Serialize;

use crate::algebra::{normal_order_indices, PbwWord};
use crate::linear::Vector;
use crate::module::{ModuleError, VirModule};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WhittakerSpec {
    pub n: u32,
    /// `(a_n, …, a_{2n})`.
    pub a: Vec<Scalar>,
    pub theta: Scalar,
}

impl WhittakerSpec {
    pub fn new(n: u32, a: Vec<Scalar>, theta: Scalar) -> Result<Self, ModuleError> {
        if a.len() != n as usize + 1 {
            return Err(ModuleError::InvalidSpec(format!(
                "expected {} character values a_{n}..a_{}, got {}",
                n + 1,
                2 * n,
                a.len()
            )));
        }
        Ok(WhittakerSpec { n, a, theta })
    }

    /// The Verma module with highest weight `h` and central charge `θ`.
    pub fn verma(h: Scalar, theta: Scalar) -> Self {
        WhittakerSpec { n: 0, a: vec![h], theta }
    }

    /// `a_i` for `n ≤ i ≤ 2n`, zero above `2n`.
    pub fn a_at(&self, i: i64) -> Scalar {
        let n = i64::from(self.n);
        if i < n || i > 2 * n {
            Scalar::zero()
        } else {
            self.a[(i - n) as usize].clone()
        }
    }

    pub fn grade(&self, w: &PbwWord) -> i64 {
        let n = i64::from(self.n);
        w.indices().iter().map(|j| n - j).sum()
    }

    /// `a_{2n−1}² + a_{2n}² ≠ 0`, the simplicity criterion for `n ≥ 1`.
    pub fn simplicity_criterion(&self) -> Option<bool> {
        if self.n == 0 {
            return None;
        }
        let n = i64::from(self.n);
        let (x, y) = (self.a_at(2 * n - 1), self.a_at(2 * n));
        Some(!(&(&x * &x) + &(&y * &y)).is_zero())
    }

    /// Basis words of grade exactly `grade`, one per partition of `grade`.
    pub fn level_basis(&self, grade: u32) -> Vec<PbwWord> {
        let n = i64::from(self.n);
        partitions(grade)
            .into_iter()
            .map(|parts| PbwWord::sorted(parts.into_iter().map(|p| n - i64::from(p)).collect()))
            .collect()
    }

    /// Basis words of grade at most `cap`.
    pub fn basis_up_to(&self, cap: u32) -> Vec<PbwWord> {
        (0..=cap).flat_map(|g| self.level_basis(g)).collect()
    }
}

/// All partitions of `k`, parts in non-increasing order.
pub fn partitions(k: u32) -> Vec<Vec<u32>> {
    fn go(rest: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(prefix.clone());
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            prefix.push(p);
            go(rest - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(k, k, &mut Vec::new(), &mut out);
    out
}

/// PBW basis words of the Verma module at level `level`.
pub fn verma_level_basis(level: u32) -> Vec<PbwWord> {
    WhittakerSpec::verma(Scalar::zero(), Scalar::zero()).level_basis(level)
}

/// `V_{a,θ}` truncated at grade `grade_cap`.
#[derive(Debug, Clone)]
pub struct WhittakerModule {
    spec: WhittakerSpec,
    grade_cap: i64,
}

impl WhittakerModule {
    pub fn new(spec: WhittakerSpec, grade_cap: i64) -> Self {
        WhittakerModule { spec, grade_cap }
    }

    pub fn spec(&self) -> &WhittakerSpec {
        &self.spec
    }

    pub fn grade_cap(&self) -> i64 {
        self.grade_cap
    }

    /// Writes a normal-ordered word as (basis word) × scalar by evaluating its
    /// trailing generators of index `≥ n` on `𝟙`.
    fn evaluate(&self, w: &PbwWord) -> Option<(PbwWord, Scalar)> {
        let n = i64::from(self.spec.n);
        let idx = w.indices();
        let split = idx.iter().position(|&j| j >= n).unwrap_or(idx.len());
        let mut c = Scalar::one();
        for &j in &idx[split..] {
            c = &c * &self.spec.a_at(j);
            if c.is_zero() {
                return None;
            }
        }
        Some((PbwWord::sorted(idx[..split].to_vec()), c))
    }

    /// The horizon used when searching for a stabilization bound.
    pub fn horizon(&self) -> i64 {
        self.grade_cap + 2 * i64::from(self.spec.n) + 2
    }
}

impl VirModule for WhittakerModule {
    type Basis = PbwWord;

    fn act_basis(&self, m: i64, b: &PbwWord) -> Result<Vector<PbwWord>, ModuleError> {
        let mut word = Vec::with_capacity(b.len() + 1);
        word.push(m);
        word.extend_from_slice(b.indices());
        let ordered = normal_order_indices(&word, &self.spec.theta);
        let mut out = Vector::new();
        for (w, c) in ordered.as_vector().iter() {
            if let Some((basis, k)) = self.evaluate(w) {
                let g = self.spec.grade(&basis);
                if g > self.grade_cap {
                    return Err(ModuleError::CapExceeded { needed: g, cap: self.grade_cap });
                }
                out.add_term(basis, c * &k);
            }
        }
        Ok(out)
    }

    fn central_charge(&self) -> Scalar {
        self.spec.theta.clone()
    }
}

/// The one-dimensional module on which `d_m` and `c` act by zero.
#[derive(Debug, Clone, Default)]
pub struct TrivialModule;

impl VirModule for TrivialModule {
    type Basis = PbwWord;

    fn act_basis(&self, _m: i64, _b: &PbwWord) -> Result<Vector<PbwWord>, ModuleError> {
        Ok(Vector::new())
    }

    fn central_charge(&self) -> Scalar {
        Scalar::zero()
    }
}

/// A right-hand tensor factor: Whittaker/Verma or trivial.
#[derive(Debug, Clone)]
pub enum Factor {
    Whittaker(WhittakerModule),
    Trivial(TrivialModule),
}

impl Factor {
    pub fn horizon(&self) -> i64 {
        match self {
            Factor::Whittaker(w) => w.horizon(),
            Factor::Trivial(_) => 1,
        }
    }
}

impl VirModule for Factor {
    type Basis = PbwWord;

    fn act_basis(&self, m: i64, b: &PbwWord) -> Result<Vector<PbwWord>, ModuleError> {
        match self {
            Factor::Whittaker(w) => w.act_basis(m, b),
            Factor::Trivial(t) => t.act_basis(m, b),
        }
    }

    fn central_charge(&self) -> Scalar {
        match self {
            Factor::Whittaker(w) => w.central_charge(),
            Factor::Trivial(t) => t.central_charge(),
        }
    }
}

/// Smallest `K ≥ 0` with `d_m v = 0` for every `m ∈ (K, K + horizon]`.
pub fn stabilization_bound<M: VirModule + ?Sized>(
    module: &M,
    v: &Vector<M::Basis>,
    horizon: i64,
) -> Result<i64, ModuleError> {
    let mut nonzero = Vec::new();
    let mut k = 0;
    loop {
        while (nonzero.len() as i64) < k + horizon {
            let m = nonzero.len() as i64 + 1;
            nonzero.push(!module.act(m, v)?.is_zero());
        }
        match (k..k + horizon).rev().find(|&i| nonzero[i as usize]) {
            None => return Ok(k),
            Some(last) => k = last + 1,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Alphabet;

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..=8).map(|k| verma_level_basis(k).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22]);
    }

    #[test]
    fn level_three_words() {
        let words: Vec<String> = verma_level_basis(3).iter().map(ToString::to_string).collect();
        assert_eq!(words, vec!["d[-3]", "d[-2] d[-1]", "d[-1]^3"]);
    }

    #[test]
    fn verma_examples() {
        let a = Alphabet::new([("h", false), ("theta", false)]).unwrap();
        let (h, th) = (a.var("h").unwrap(), a.var("theta").unwrap());
        let v = WhittakerModule::new(WhittakerSpec::verma(h.clone(), th), 6);
        let dm1 = Vector::basis(PbwWord::sorted(vec![-1]));
        assert_eq!(v.act(1, &dm1).unwrap(), Vector::term(PbwWord::empty(), h.mul_int(-2)));
        assert_eq!(v.act(0, &dm1).unwrap(), dm1.scale(&(&h - &Scalar::one())));
    }

    #[test]
    fn whittaker_character() {
        let a = Alphabet::new([("a1", false), ("a2", false), ("theta", false)]).unwrap();
        let (a1, a2) = (a.var("a1").unwrap(), a.var("a2").unwrap());
        let spec = WhittakerSpec::new(1, vec![a1.clone(), a2.clone()], a.var("theta").unwrap()).unwrap();
        let w = WhittakerModule::new(spec, 4);
        let one = Vector::basis(PbwWord::empty());
        assert_eq!(w.act(1, &one).unwrap(), one.scale(&a1));
        assert_eq!(w.act(2, &one).unwrap(), one.scale(&a2));
        assert!(w.act(3, &one).unwrap().is_zero());
    }

    #[test]
    fn cap_is_enforced() {
        let v = WhittakerModule::new(WhittakerSpec::verma(Scalar::one(), Scalar::zero()), 2);
        let one = Vector::basis(PbwWord::empty());
        assert!(matches!(v.act(-3, &one), Err(ModuleError::CapExceeded { needed: 3, cap: 2 })));
    }

    #[test]
    fn stabilization_bounds() {
        let v = WhittakerModule::new(WhittakerSpec::verma(Scalar::int(2), Scalar::one()), 6);
        assert_eq!(stabilization_bound(&v, &Vector::basis(PbwWord::empty()), v.horizon()).unwrap(), 0);
        let w = Vector::basis(PbwWord::sorted(vec![-3, -1]));
        assert_eq!(stabilization_bound(&v, &w, v.horizon()).unwrap(), 4);
    }
}
