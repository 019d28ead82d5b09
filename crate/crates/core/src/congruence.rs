//! The congruence test for (S, T), SL₂(Z) words, and presentations of SL₂(Z/N).

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{factorize, inv_mod, units};
use crate::cyclo::{CycloError, Rational};
use crate::galois::{extract_galois, g_matrix, galois_mod_n, lift_for, GaloisError};
use crate::matrix::Matrix;
use crate::moddata::ModularData;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CongruenceError {
    #[error("precondition: {0}")]
    Precondition(String),
    #[error("matrix has determinant {0}, not 1")]
    Determinant(BigInt),
    #[error("more than {cap} elements")]
    CapExceeded { cap: u64 },
    #[error("two-ness of zero")]
    Zero,
    #[error(transparent)]
    Galois(#[from] GaloisError),
    #[error(transparent)]
    Cyclo(#[from] CycloError),
}

pub type Sl2Mat = [[i64; 2]; 2];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    CoprimeP2,
    CoprimeP3,
    Composite,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::CoprimeP2 => "coprime-p2",
            Branch::CoprimeP3 => "coprime-p3",
            Branch::Composite => "composite",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Condition {
    pub name: String,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CongruenceReport {
    pub n: u64,
    pub branch: Branch,
    pub e: u32,
    pub m: u64,
    pub d: Option<u64>,
    pub conditions: Vec<Condition>,
}

impl CongruenceReport {
    pub fn passed(&self) -> bool {
        self.conditions.iter().all(|c| c.passed)
    }
}

impl fmt::Display for CongruenceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "N = {} = 2^{}·{}", self.n, self.e, self.m)?;
        writeln!(f, "branch: {}", self.branch)?;
        if let Some(d) = self.d {
            writeln!(f, "d = {d}")?;
        }
        for c in &self.conditions {
            writeln!(f, "  {:<40} {}", c.name, if c.passed { "ok" } else { "FAILED" })?;
        }
        if self.passed() {
            write!(f, "congruence property: holds")
        } else {
            write!(f, "congruence test failed (inconclusive: the converse is not established)")
        }
    }
}

fn two_part(n: u64) -> (u32, u64) {
    let e = n.trailing_zeros();
    (e, n >> e)
}

/// Smallest d ≥ 0 with d ≡ 1 (mod 2ᵉ) and d ≡ 0 (mod m).
pub fn crt_d(e: u32, m: u64) -> u64 {
    let p = 1u64 << e;
    (0..p * m).step_by(m as usize).find(|d| d % p == 1 % p).unwrap_or(0)
}

/// G_ℓ T^{a} = T^{b} G_ℓ with ℓ taken mod N.
fn galois_twist_holds(md: &ModularData, ell: i64, a: i64, b: i64) -> Result<bool, CongruenceError> {
    let g = g_matrix(&galois_mod_n(md, ell)?);
    let lhs = g.mul_diag(&md.t_pow(a)?)?;
    let rhs = g.diag_mul(&md.t_pow(b)?)?;
    Ok(lhs == rhs)
}

pub fn theorem2_test(md: &ModularData) -> Result<CongruenceReport, CongruenceError> {
    let n = md.t_order();
    let (e, m) = two_part(n);
    let mut report = CongruenceReport {
        n,
        branch: Branch::Composite,
        e,
        m,
        d: None,
        conditions: Vec::new(),
    };
    let cond = |name: &str, passed| Condition {
        name: name.to_string(),
        passed,
    };
    if n % 2 == 1 {
        report.branch = Branch::CoprimeP2;
        let ok = galois_twist_holds(md, 2, 1, 4)?;
        report.conditions.push(cond("(a) G_2 T = T^4 G_2", ok));
    } else if n % 3 != 0 {
        report.branch = Branch::CoprimeP3;
        let ok = galois_twist_holds(md, 3, 1, 9)?;
        report.conditions.push(cond("(a) G_3 T = T^9 G_3", ok));
    } else {
        let d = crt_d(e, m);
        report.d = Some(d);
        let di = d as i64;
        let u = u_matrix(md)?;
        report
            .conditions
            .push(cond("(i) [T^(2^e), S T^m S^-1] = 1", u.zero_pattern));
        let nn = n as i64;
        report.conditions.push(cond(
            "(ii) G_(2d-1) T = T G_(2d-1)",
            galois_twist_holds(md, 2 * di - 1, 1, 1)?,
        ));
        report.conditions.push(cond(
            "(iii) G_(2-d) T = T^(4-3d) G_(2-d)",
            galois_twist_holds(md, 2 - di, 1, (4 - 3 * di).rem_euclid(nn))?,
        ));
        report.conditions.push(cond(
            "(iv) G_(1+2d) T = T^(1+8d) G_(1+2d)",
            galois_twist_holds(md, 1 + 2 * di, 1, (1 + 8 * di).rem_euclid(nn))?,
        ));
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UReport {
    pub u: Matrix,
    pub e: u32,
    pub m: u64,
    /// U_ac = 0 whenever T^(2^e)_aa ≠ T^(2^e)_cc.
    pub zero_pattern: bool,
    pub symmetric: bool,
    pub unitary: bool,
    /// U^(2^e) = I.
    pub order_ok: bool,
}

/// U = S T^m S⁻¹, i.e. U_ac = Σ_b S_ab conj(S_cb) T_bb^m.
pub fn u_matrix(md: &ModularData) -> Result<UReport, CongruenceError> {
    let (e, m) = two_part(md.t_order());
    if e == 0 {
        return Err(CongruenceError::Precondition("N is odd, so there is no 2-part".into()));
    }
    let u = md
        .s()
        .mul_diag(&md.t_pow(m as i64)?)?
        .checked_mul(&md.s_inv())?;
    let t2e = md.t_pow(1 << e)?;
    let n = md.size();
    let zero_pattern = (0..n).all(|a| (0..n).all(|c| t2e[a] == t2e[c] || u.get(a, c).is_zero()));
    let unitary = u.checked_mul(&u.conj().transpose())?.is_identity();
    let order_ok = u.pow(1 << e)?.is_identity();
    Ok(UReport {
        symmetric: u.is_symmetric(),
        u,
        e,
        m,
        zero_pattern,
        unitary,
        order_ok,
    })
}

pub fn theorem4_applies(md: &ModularData) -> bool {
    md.t_order() % 2 == 1
}

/// Exponent of 2 in a nonzero rational.
pub fn two_ness(r: &Rational) -> Result<i64, CongruenceError> {
    if r.is_zero() {
        return Err(CongruenceError::Zero);
    }
    let v = |x: &BigInt| x.trailing_zeros().map_or(0, |z| z as i64);
    Ok(v(r.numer()) - v(r.denom()))
}

/// t(c) ≥ 3 and t(h_i) ≥ 0 for all i, with t(0) = +∞.
pub fn odd_order_criterion(c: &Rational, h: &[Rational]) -> bool {
    let t = |r: &Rational| two_ness(r).unwrap_or(i64::MAX);
    t(c) >= 3 && h.iter().all(|x| t(x) >= 0)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Token {
    S,
    SInv,
    T(i64),
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GeneratorWord(pub Vec<Token>);

impl GeneratorWord {
    pub fn tokens(&self) -> &[Token] {
        &self.0
    }

    pub fn inverse(&self) -> Self {
        GeneratorWord(
            self.0
                .iter()
                .rev()
                .map(|t| match t {
                    Token::S => Token::SInv,
                    Token::SInv => Token::S,
                    Token::T(k) => Token::T(-k),
                })
                .collect(),
        )
    }

    pub fn then(mut self, other: &GeneratorWord) -> Self {
        self.0.extend(other.0.iter().cloned());
        self
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(GeneratorWord::default(), |acc, _| acc.then(self))
    }

    /// Product in SL₂(Z).
    pub fn evaluate(&self) -> Sl2Mat {
        let mut acc = [[1, 0], [0, 1]];
        for t in &self.0 {
            acc = mat_mul(&acc, &token_matrix(t));
        }
        acc
    }
}

impl fmt::Display for GeneratorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|t| match t {
                Token::S => "s".to_string(),
                Token::SInv => "s^-1".to_string(),
                Token::T(1) => "t".to_string(),
                Token::T(k) => format!("t^{k}"),
            })
            .collect();
        f.write_str(&parts.join(" "))
    }
}

fn token_matrix(t: &Token) -> Sl2Mat {
    match t {
        Token::S => [[0, 1], [-1, 0]],
        Token::SInv => [[0, -1], [1, 0]],
        Token::T(k) => [[1, *k], [0, 1]],
    }
}

pub fn mat_mul(a: &Sl2Mat, b: &Sl2Mat) -> Sl2Mat {
    let mut out = [[0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

type BigMat = [[BigInt; 2]; 2];

fn big(m: &Sl2Mat) -> BigMat {
    m.map(|r| r.map(BigInt::from))
}

fn big_mul(a: &BigMat, b: &BigMat) -> BigMat {
    std::array::from_fn(|i| std::array::from_fn(|j| &a[i][0] * &b[0][j] + &a[i][1] * &b[1][j]))
}

/// Euclid on the first column. T exponents are reduced mod `reduce` when given.
fn word_of(m: &BigMat, reduce: Option<u64>) -> Result<GeneratorWord, CongruenceError> {
    let det = &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0];
    if !det.is_one() {
        return Err(CongruenceError::Determinant(det));
    }
    let exp = |q: &BigInt| -> i64 {
        match reduce {
            Some(n) => q.mod_floor(&BigInt::from(n)).to_i64().unwrap(),
            None => q.to_i64().expect("exponent fits in i64"),
        }
    };
    let mut out = Vec::new();
    let [[mut a, mut b], [mut c, mut d]] = m.clone();
    while !c.is_zero() {
        // nearest-integer quotient keeps the word short
        let q = (BigInt::from(2) * &a + &c).div_floor(&(BigInt::from(2) * &c));
        let k = exp(&q);
        if k != 0 {
            out.push(Token::T(k));
        }
        out.push(Token::S);
        let (na, nb) = (-&c, -&d);
        let nc = &a - &q * &c;
        let nd = &b - &q * &d;
        (a, b, c, d) = (na, nb, nc, nd);
    }
    if a.is_negative() {
        out.push(Token::S);
        out.push(Token::S);
        b = -b;
    }
    let k = exp(&b);
    if k != 0 {
        out.push(Token::T(k));
    }
    Ok(GeneratorWord(out))
}

/// A word in s = [[0,1],[−1,0]] and t = [[1,1],[0,1]] whose product is `mat`.
pub fn sl2_word(mat: &Sl2Mat) -> Result<GeneratorWord, CongruenceError> {
    word_of(&big(mat), None)
}

/// Anything s and t can be sent to.
pub trait Sl2Target {
    type Elem: Clone + PartialEq;
    fn identity(&self) -> Self::Elem;
    /// Right-multiply by the image of one token.
    fn apply(&self, acc: &Self::Elem, tok: &Token) -> Result<Self::Elem, CongruenceError>;
    /// The N with t^N = 1.
    fn level(&self) -> u64;

    fn eval(&self, w: &GeneratorWord) -> Result<Self::Elem, CongruenceError> {
        let mut acc = self.identity();
        for t in &w.0 {
            acc = self.apply(&acc, t)?;
        }
        Ok(acc)
    }
}

impl Sl2Target for ModularData {
    type Elem = Matrix;

    fn identity(&self) -> Matrix {
        Matrix::identity(self.size())
    }

    fn apply(&self, acc: &Matrix, tok: &Token) -> Result<Matrix, CongruenceError> {
        Ok(match tok {
            Token::S => acc.checked_mul(self.s())?,
            Token::SInv => acc.checked_mul(&self.s_inv())?,
            Token::T(k) => acc.mul_diag(&self.t_pow(*k)?)?,
        })
    }

    fn level(&self) -> u64 {
        self.t_order()
    }
}

/// SL₂(Z/N) with its defining matrices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Sl2ModN(pub u64);

impl Sl2Target for Sl2ModN {
    type Elem = [[u64; 2]; 2];

    fn identity(&self) -> Self::Elem {
        let one = 1 % self.0;
        [[one, 0], [0, one]]
    }

    fn apply(&self, acc: &Self::Elem, tok: &Token) -> Result<Self::Elem, CongruenceError> {
        let n = self.0 as i64;
        let g = token_matrix(tok).map(|r| r.map(|x| x.rem_euclid(n) as u64));
        Ok(mul_mod(acc, &g, self.0))
    }

    fn level(&self) -> u64 {
        self.0
    }
}

fn mul_mod(a: &[[u64; 2]; 2], b: &[[u64; 2]; 2], n: u64) -> [[u64; 2]; 2] {
    std::array::from_fn(|i| std::array::from_fn(|j| (a[i][0] * b[0][j] + a[i][1] * b[1][j]) % n))
}

/// ρ(mat) with s ↦ S, t ↦ T.
pub fn rho_eval(md: &ModularData, mat: &Sl2Mat) -> Result<Matrix, CongruenceError> {
    md.eval(&word_of(&big(mat), Some(md.t_order()))?)
}

/// [[ℓ, N], [−N·v, u]] with ℓu + N²v = 1, so ≡ diag(ℓ, 1/ℓ) mod N.
pub fn h_lift(ell: i64, n: u64) -> Result<Sl2Mat, CongruenceError> {
    let n_i = n as i64;
    let e = (ell as i128).extended_gcd(&((n_i as i128) * (n_i as i128)));
    if e.gcd.abs() != 1 {
        return Err(CongruenceError::Precondition(format!("{ell} is not coprime to {n}")));
    }
    let (u, v) = (e.x * e.gcd, e.y * e.gcd);
    Ok([[ell, n_i], [(-(n_i as i128) * v) as i64, u as i64]])
}

/// ρ(h_ℓ) = G_ℓ.
pub fn rho_h_check(md: &ModularData, ell: i64) -> Result<bool, CongruenceError> {
    let n = md.t_order();
    let h = h_lift(ell.rem_euclid(n.max(1) as i64), n)?;
    let lhs = rho_eval(md, &h)?;
    let g = g_matrix(&extract_galois(md, lift_for(md, ell)?)?);
    Ok(lhs == g)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SampleVerdict {
    Pass { trials: u32 },
    Fail { trial: u32, word: GeneratorWord },
}

impl SampleVerdict {
    pub fn passed(&self) -> bool {
        matches!(self, SampleVerdict::Pass { .. })
    }
}

impl fmt::Display for SampleVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SampleVerdict::Pass { trials } => write!(f, "pass ({trials} products map to I)"),
            SampleVerdict::Fail { trial, word } => {
                write!(f, "fail at trial {trial}: ρ({word}) ≠ I")
            }
        }
    }
}

pub const GAMMA_MAX_FACTORS: usize = 12;

/// Random products of t^N, [[1,0],[N,1]] and g t^N g⁻¹; each product is reduced to
/// its Euclidean word before ρ is applied, so this tests the relations of S and T.
pub fn gamma_n_sample(md: &ModularData, trials: u32, seed: u64) -> Result<SampleVerdict, CongruenceError> {
    let n = md.t_order() as i64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tn: Sl2Mat = [[1, n], [0, 1]];
    let lower: Sl2Mat = [[1, 0], [n, 1]];
    for trial in 0..trials {
        let k = rng.gen_range(1..=GAMMA_MAX_FACTORS);
        let mut prod = big(&[[1, 0], [0, 1]]);
        for _ in 0..k {
            let f = match rng.gen_range(0..3) {
                0 => tn,
                1 => lower,
                _ => {
                    let len = rng.gen_range(1..=4);
                    let g = GeneratorWord(
                        (0..len)
                            .map(|_| {
                                if rng.gen_bool(0.5) {
                                    Token::S
                                } else {
                                    Token::T(rng.gen_range(-3..=3))
                                }
                            })
                            .collect(),
                    );
                    let gm = g.evaluate();
                    let gi = g.inverse().evaluate();
                    mat_mul(&mat_mul(&gm, &tn), &gi)
                }
            };
            let f = if rng.gen_bool(0.5) { f } else { inverse(&f) };
            prod = big_mul(&prod, &big(&f));
        }
        let nb = BigInt::from(n);
        debug_assert!(
            prod[0][1].mod_floor(&nb).is_zero() && prod[1][0].mod_floor(&nb).is_zero(),
            "sampled product lies in Γ(N)"
        );
        let word = word_of(&prod, Some(n as u64))?;
        if !md.eval(&word)?.is_identity() {
            return Ok(SampleVerdict::Fail { trial, word });
        }
    }
    Ok(SampleVerdict::Pass { trials })
}

fn inverse(m: &Sl2Mat) -> Sl2Mat {
    [[m[1][1], -m[0][1]], [-m[1][0], m[0][0]]]
}

pub const SL2_DEFAULT_CAP: u64 = 10_000_000;

/// |SL₂(Z/N)| by closure of s and t.
pub fn sl2_group_order(n: u64, cap: u64) -> Result<u64, CongruenceError> {
    if n == 0 {
        return Err(CongruenceError::Precondition("N must be positive".into()));
    }
    let g = Sl2ModN(n);
    let start = g.identity();
    let mut seen: HashSet<[[u64; 2]; 2]> = HashSet::new();
    seen.insert(start);
    let mut stack = vec![start];
    while let Some(x) = stack.pop() {
        for tok in [Token::S, Token::T(1)] {
            let y = g.apply(&x, &tok)?;
            if seen.insert(y) {
                if seen.len() as u64 > cap {
                    return Err(CongruenceError::CapExceeded { cap });
                }
                stack.push(y);
            }
        }
    }
    Ok(seen.len() as u64)
}

/// N³ Π_{p|N} (1 − p⁻²).
pub fn sl2_order_formula(n: u64) -> u64 {
    factorize(n)
        .iter()
        .fold(n * n * n, |acc, &(p, _)| acc / (p * p) * (p * p - 1))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    AP2,
    AP3,
    BP5,
    BP7,
    C,
    /// g_a s = s g_a⁻¹, g_a t = t^{a²} g_a, [g_a, g_b] = 1 for all units a, b.
    All,
}

impl std::str::FromStr for Variant {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "a-p2" => Ok(Variant::AP2),
            "a-p3" => Ok(Variant::AP3),
            "b-p5" => Ok(Variant::BP5),
            "b-p7" => Ok(Variant::BP7),
            "c" => Ok(Variant::C),
            "all" => Ok(Variant::All),
            other => Err(format!(
                "unknown variant `{other}` (expected a-p2, a-p3, b-p5, b-p7, c or all)"
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationResult {
    pub name: String,
    pub holds: bool,
}

fn t(k: i64) -> Token {
    Token::T(k)
}

fn w(tokens: Vec<Token>) -> GeneratorWord {
    GeneratorWord(tokens)
}

/// s t^{1/a} s t^a s t^{1/a}
fn g_word(a: i64, n: u64) -> Result<GeneratorWord, CongruenceError> {
    let u = inv_mod(a, n).ok_or_else(|| {
        CongruenceError::Precondition(format!("{a} is not invertible mod {n}"))
    })? as i64;
    Ok(w(vec![Token::S, t(u), Token::S, t(a), Token::S, t(u)]))
}

/// Check the relations of the chosen presentation after substituting into `target`.
pub fn lemma1_relations<G: Sl2Target>(
    target: &G,
    variant: Variant,
) -> Result<Vec<RelationResult>, CongruenceError> {
    let n = target.level();
    let ni = n as i64;
    let s = w(vec![Token::S]);
    let s2 = s.pow(2);
    let one = GeneratorWord::default();
    let mut rels: Vec<(String, GeneratorWord, GeneratorWord)> = vec![
        ("t^N = 1".into(), w(vec![t(ni)]), one.clone()),
        ("s^4 = 1".into(), s.pow(4), one.clone()),
        ("(st^-1)^3 = s^2".into(), w(vec![Token::S, t(-1)]).pow(3), s2.clone()),
    ];
    let conj_rels = |name: &str, g: &GeneratorWord, sq: i64, rels: &mut Vec<_>| {
        rels.push((
            format!("{name} s = s {name}^-1"),
            g.clone().then(&s),
            s.clone().then(&g.inverse()),
        ));
        rels.push((
            format!("{name} t = t^{sq} {name}"),
            g.clone().then(&w(vec![t(1)])),
            w(vec![t(sq.rem_euclid(ni.max(1)))]).then(g),
        ));
    };
    match variant {
        Variant::AP2 | Variant::AP3 | Variant::BP5 | Variant::BP7 => {
            let p: i64 = match variant {
                Variant::AP2 => 2,
                Variant::AP3 => 3,
                Variant::BP5 => 5,
                _ => 7,
            };
            if (p as u64).gcd(&n) != 1 {
                return Err(CongruenceError::Precondition(format!(
                    "variant needs N coprime to {p}, N = {n}"
                )));
            }
            let g = g_word(p, n)?;
            conj_rels("g", &g, p * p, &mut rels);
            if p >= 5 {
                let u = inv_mod(p, n).unwrap() as i64;
                let rhs = w(vec![
                    t(p * (p - 1) / 2),
                    Token::S,
                    t(-2 * u),
                    Token::S,
                    t(-(p - 1) / 2),
                    Token::S,
                    t(2),
                    Token::S,
                ]);
                rels.push(("g = t^(p(p-1)/2) s t^(-2/p) s t^(-(p-1)/2) s t^2 s".into(), g, rhs));
            }
        }
        Variant::C => {
            let (e, m) = two_part(n);
            let d = crt_d(e, m) as i64;
            let need = |x: i64| {
                inv_mod(x, n).map(|v| v as i64).ok_or_else(|| {
                    CongruenceError::Precondition(format!("{x} is not invertible mod {n}"))
                })
            };
            let d2 = need(2 - d)?;
            let d3 = need(2 * d + 1)?;
            let commutator = |x: &GeneratorWord, y: &GeneratorWord| {
                x.clone().then(y).then(&x.inverse()).then(&y.inverse())
            };
            let t2e = w(vec![t(1 << e)]);
            let stms = w(vec![Token::S, t(m as i64), Token::SInv]);
            rels.push(("[t^(2^e), s t^m s^-1] = 1".into(), commutator(&t2e, &stms), one.clone()));
            let gstar = w(vec![Token::S, t(1 - 2 * d)]).pow(3);
            rels.push(("[g*, t] = 1".into(), commutator(&gstar, &w(vec![t(1)])), one.clone()));
            rels.push((
                "g* s = s g*^-1".into(),
                gstar.clone().then(&s),
                s.clone().then(&gstar.inverse()),
            ));
            let g2 = w(vec![Token::S, t(d2), Token::S, t(2 - d), Token::S, t(d2)]);
            conj_rels("g2", &g2, 4 - 3 * d, &mut rels);
            let g3 = w(vec![Token::S, t(d3), Token::S, t(2 * d + 1), Token::S, t(d3)]);
            conj_rels("g3", &g3, 8 * d + 1, &mut rels);
        }
        Variant::All => {
            let us = units(n);
            let gs: Vec<(i64, GeneratorWord)> = us
                .iter()
                .map(|&a| g_word(a, n).map(|g| (a, g)))
                .collect::<Result<_, _>>()?;
            for (a, g) in &gs {
                conj_rels(&format!("g{a}"), g, a * a, &mut rels);
            }
            for (i, (a, ga)) in gs.iter().enumerate() {
                for (b, gb) in &gs[i + 1..] {
                    rels.push((
                        format!("g{a} g{b} = g{b} g{a}"),
                        ga.clone().then(gb),
                        gb.clone().then(ga),
                    ));
                }
            }
        }
    }
    rels.into_iter()
        .map(|(name, lhs, rhs)| {
            Ok(RelationResult {
                name,
                holds: target.eval(&lhs)? == target.eval(&rhs)?,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn words_round_trip() {
        for m in [[[1, 0], [0, 1]], [[1, 1], [0, 1]], [[1, 0], [-1, 1]], [[2, 3], [1, 2]], [[-1, 0], [0, -1]], [[5, -7], [-2, 3]]] {
            assert_eq!(sl2_word(&m).unwrap().evaluate(), m);
        }
        assert!(sl2_word(&[[1, 0], [0, 1]]).unwrap().0.is_empty());
        assert_eq!(sl2_word(&[[1, 1], [0, 1]]).unwrap().0, vec![Token::T(1)]);
        assert!(sl2_word(&[[2, 0], [0, 1]]).is_err());
    }

    #[test]
    fn crt_values() {
        assert_eq!(crt_d(1, 3), 3);
        assert_eq!(crt_d(3, 3), 9);
        assert_eq!(crt_d(0, 5), 0);
    }

    #[test]
    fn lifts() {
        let h = h_lift(5, 12).unwrap();
        assert_eq!(h[0][0] * h[1][1] - h[0][1] * h[1][0], 1);
        assert_eq!(h[0][0].rem_euclid(12), 5);
        assert_eq!(h[1][1].rem_euclid(12), 5);
        assert_eq!(h[0][1].rem_euclid(12), 0);
        assert_eq!(h[1][0].rem_euclid(12), 0);
    }
}
