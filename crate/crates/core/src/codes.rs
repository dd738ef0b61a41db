//! Multiplicity and folded Reed-Solomon codes: parameters, encoding,
//! agreement and a seeded corruption channel.

use rand::Rng;

use crate::algebra::*;
use crate::error::{Error, Result};
use crate::interpolation::ReceivedWord;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CodeKind {
    /// Column `i` holds `f, f', ..., f^(s-1)` at `alpha_i`.
    Mult,
    /// Column `i` holds `f` at `alpha_i, gamma alpha_i, ..., gamma^(s-1) alpha_i`.
    Frs,
}

impl CodeKind {
    pub fn name(self) -> &'static str {
        match self {
            CodeKind::Mult => "mult",
            CodeKind::Frs => "frs",
        }
    }
}

impl std::str::FromStr for CodeKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mult" => Ok(CodeKind::Mult),
            "frs" => Ok(CodeKind::Frs),
            other => Err(Error::InvalidParameter(format!("unknown code kind {other:?}"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CodeParams {
    kind: CodeKind,
    field: FieldConfig,
    n: usize,
    s: usize,
    d: usize,
    alphas: Vec<Fe>,
    gamma: Fe,
}

impl CodeParams {
    /// Multiplicity code on the points `0, 1, ..., n - 1`.
    pub fn mult(field: FieldConfig, n: usize, s: usize, d: usize) -> Result<Self> {
        let alphas = (0..n as u64).map(|a| field.elem(a)).collect();
        Self::mult_with_points(field, alphas, s, d)
    }

    pub fn mult_with_points(field: FieldConfig, alphas: Vec<Fe>, s: usize, d: usize) -> Result<Self> {
        let n = alphas.len();
        if n == 0 || s == 0 {
            return Err(Error::InvalidParameter("n and s must be positive".into()));
        }
        if field.p() <= d as u64 {
            return Err(Error::InvalidParameter(format!("mult code needs p > d, got p = {}, d = {d}", field.p())));
        }
        if n as u64 > field.p() {
            return Err(Error::InvalidParameter(format!("mult code needs n <= p, got n = {n}")));
        }
        let mut sorted: Vec<u64> = alphas.iter().map(|a| a.value()).collect();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::DuplicatePoint);
        }
        Ok(CodeParams { kind: CodeKind::Mult, field, n, s, d, alphas, gamma: Fe::ONE })
    }

    /// Folded code with `alpha_i = gamma^(s i)` for the field's primitive
    /// root `gamma`.
    pub fn frs(field: FieldConfig, n: usize, s: usize, d: usize) -> Result<Self> {
        let gamma = field.gamma();
        Self::frs_with_gamma(field, n, s, d, gamma)
    }

    pub fn frs_with_gamma(field: FieldConfig, n: usize, s: usize, d: usize, gamma: Fe) -> Result<Self> {
        if n == 0 || s == 0 {
            return Err(Error::InvalidParameter("n and s must be positive".into()));
        }
        if !field.is_primitive(gamma) {
            return Err(Error::InvalidParameter(format!("frs code needs a primitive gamma, {gamma} is not")));
        }
        if d >= n * s {
            return Err(Error::InvalidParameter(format!("frs code needs d < s n, got d = {d}")));
        }
        if (n * s) as u64 > field.p() - 1 {
            return Err(Error::InvalidParameter(format!("frs code needs n <= (p - 1) / s, got n = {n}")));
        }
        let step = field.pow(gamma, s as u64);
        let alphas = std::iter::successors(Some(Fe::ONE), |&a| Some(field.mul(a, step))).take(n).collect();
        Ok(CodeParams { kind: CodeKind::Frs, field, n, s, d, alphas, gamma })
    }

    pub fn kind(&self) -> CodeKind {
        self.kind
    }

    pub fn field(&self) -> &FieldConfig {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn alphas(&self) -> &[Fe] {
        &self.alphas
    }

    /// Folding generator; one for multiplicity codes.
    pub fn gamma(&self) -> Fe {
        self.gamma
    }

    /// `d / (s n)`. The dimension is `d + 1`, so this slightly undercounts.
    pub fn rate(&self) -> f64 {
        self.d as f64 / (self.s * self.n) as f64
    }

    /// `1 - d / (s n)`.
    pub fn distance(&self) -> f64 {
        1.0 - self.rate()
    }

    pub fn encode(&self, message: &Poly) -> Result<Codeword> {
        match self.kind {
            CodeKind::Mult => encode_mult(message, self),
            CodeKind::Frs => encode_frs(message, self),
        }
    }

    /// Encodes several messages sharing one evaluation tree.
    pub fn encode_many(&self, messages: &[Poly]) -> Result<Vec<Codeword>> {
        for m in messages {
            check_degree(m, self)?;
        }
        if messages.is_empty() {
            return Ok(Vec::new());
        }
        let f = &self.field;
        Ok(match self.kind {
            CodeKind::Mult => {
                let fact = f.factorials(self.s - 1);
                let tree = SubproductTree::over_points(f, &self.alphas, self.s);
                tree.remainders_many(f, messages)
                    .iter()
                    .map(|rems| {
                        let columns = rems
                            .iter()
                            .zip(&self.alphas)
                            .map(|(r, &a)| {
                                let local = taylor_shift(f, r, a);
                                (0..self.s).map(|k| f.mul(local.coeff(k), fact[k])).collect()
                            })
                            .collect();
                        Codeword::new(columns)
                    })
                    .collect()
            }
            CodeKind::Frs => {
                let points = self.folded_points();
                let tree = SubproductTree::over_points(f, &points, 1);
                tree.remainders_many(f, messages)
                    .iter()
                    .map(|rems| {
                        let values: Vec<Fe> = rems.iter().map(Poly::constant_term).collect();
                        Codeword::new(values.chunks(self.s).map(<[Fe]>::to_vec).collect())
                    })
                    .collect()
            }
        })
    }

    /// `gamma^k alpha_i` for every column `i` and `k < s`, column by column.
    fn folded_points(&self) -> Vec<Fe> {
        let f = &self.field;
        self.alphas
            .iter()
            .flat_map(|&a| std::iter::successors(Some(a), |&x| Some(f.mul(x, self.gamma))).take(self.s))
            .collect()
    }

    /// Wraps raw columns as a received word for this code.
    pub fn received(&self, columns: Vec<Vec<Fe>>) -> Result<ReceivedWord> {
        if columns.len() != self.n || columns.iter().any(|c| c.len() != self.s) {
            return Err(Error::ShapeMismatch);
        }
        ReceivedWord::new(&self.field, self.kind, self.alphas.clone(), columns, self.gamma)
    }
}

/// `n` columns of `s` symbols.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Codeword {
    columns: Vec<Vec<Fe>>,
}

impl Codeword {
    pub fn new(columns: Vec<Vec<Fe>>) -> Self {
        Codeword { columns }
    }

    pub fn columns(&self) -> &[Vec<Fe>] {
        &self.columns
    }

    pub fn into_columns(self) -> Vec<Vec<Fe>> {
        self.columns
    }

    pub fn n(&self) -> usize {
        self.columns.len()
    }
}

fn check_degree(message: &Poly, code: &CodeParams) -> Result<()> {
    match message.degree() {
        Some(deg) if deg > code.d => Err(Error::DegreeTooLarge { degree: deg, bound: code.d }),
        _ => Ok(()),
    }
}

/// Derivative jets through a remainder tree on `(x - alpha_i)^s`: the local
/// Taylor coefficients times `k!` are the derivatives.
pub fn encode_mult(message: &Poly, code: &CodeParams) -> Result<Codeword> {
    if code.kind != CodeKind::Mult {
        return Err(Error::InvalidParameter("not a multiplicity code".into()));
    }
    Ok(code.encode_many(std::slice::from_ref(message))?.pop().expect("one message"))
}

/// Evaluations at `gamma^k alpha_i` by one multipoint evaluation.
pub fn encode_frs(message: &Poly, code: &CodeParams) -> Result<Codeword> {
    if code.kind != CodeKind::Frs {
        return Err(Error::InvalidParameter("not a folded code".into()));
    }
    Ok(code.encode_many(std::slice::from_ref(message))?.pop().expect("one message"))
}

/// Number of columns on which the two words agree entirely.
pub fn agreement(a: &[Vec<Fe>], b: &[Vec<Fe>]) -> Result<usize> {
    if a.len() != b.len() || a.iter().zip(b).any(|(x, y)| x.len() != y.len()) {
        return Err(Error::ShapeMismatch);
    }
    Ok(a.iter().zip(b).filter(|(x, y)| x == y).count())
}

/// Replaces exactly `errors` distinct columns, chosen uniformly, by uniformly
/// random columns that differ from the original.
pub fn corrupt<R: Rng + ?Sized>(code: &CodeParams, word: &Codeword, errors: usize, rng: &mut R) -> Result<ReceivedWord> {
    let n = word.n();
    if errors > n {
        return Err(Error::TooManyErrors(format!("{errors} errors requested for {n} columns")));
    }
    let p = code.field.p();
    let mut columns = word.columns.clone();
    for idx in rand::seq::index::sample(rng, n, errors) {
        let old = &word.columns[idx];
        let fresh = loop {
            let cand: Vec<Fe> = (0..old.len()).map(|_| code.field.elem(rng.gen_range(0..p))).collect();
            if &cand != old {
                break cand;
            }
        };
        columns[idx] = fresh;
    }
    code.received(columns)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn cols(f: &FieldConfig, rows: &[&[u64]]) -> Vec<Vec<Fe>> {
        rows.iter().map(|r| r.iter().map(|&v| f.elem(v)).collect()).collect()
    }

    #[test]
    fn mult_encoding_of_square() {
        let f = FieldConfig::new(7).unwrap();
        let code = CodeParams::mult(f.clone(), 3, 2, 2).unwrap();
        let c = encode_mult(&Poly::from_u64s(&f, &[0, 0, 1]), &code).unwrap();
        assert_eq!(c.columns(), cols(&f, &[&[0, 0], &[1, 2], &[4, 4]]).as_slice());
        let one = encode_mult(&Poly::one(), &code).unwrap();
        assert_eq!(agreement(one.columns(), &vec![vec![Fe::ZERO; 2]; 3]).unwrap(), 0);
        assert!(matches!(
            encode_mult(&Poly::from_u64s(&f, &[0, 0, 0, 1]), &code),
            Err(Error::DegreeTooLarge { degree: 3, bound: 2 })
        ));
    }

    #[test]
    fn frs_encoding_of_identity() {
        let f = FieldConfig::new(5).unwrap();
        let code = CodeParams::frs_with_gamma(f.clone(), 2, 2, 1, f.elem(2)).unwrap();
        assert_eq!(code.alphas(), &[f.elem(1), f.elem(4)]);
        let c = encode_frs(&Poly::x(), &code).unwrap();
        assert_eq!(c.columns(), cols(&f, &[&[1, 2], &[4, 3]]).as_slice());
    }

    #[test]
    fn corruption_is_exact_and_seeded() {
        let f = FieldConfig::new(101).unwrap();
        let code = CodeParams::mult(f.clone(), 10, 3, 8).unwrap();
        let c = code.encode(&Poly::from_u64s(&f, &[1, 2, 3])).unwrap();
        for e in [0, 4, 10] {
            let r1 = corrupt(&code, &c, e, &mut ChaCha8Rng::seed_from_u64(9)).unwrap();
            let r2 = corrupt(&code, &c, e, &mut ChaCha8Rng::seed_from_u64(9)).unwrap();
            assert_eq!(r1, r2);
            assert_eq!(agreement(c.columns(), r1.columns()).unwrap(), 10 - e);
        }
        assert!(corrupt(&code, &c, 11, &mut ChaCha8Rng::seed_from_u64(9)).is_err());
    }
}
