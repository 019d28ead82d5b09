//! Finite groups given by multiplication tables, with centralizer character tables.

use num_integer::Integer;

use crate::cyclo::Cyclo;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("unknown group `{0}`")]
    Unknown(String),
    #[error("multiplication table: {0}")]
    Table(String),
    #[error("class data: {0}")]
    Classes(String),
    #[error("character table of C({rep}): {why}")]
    Characters { rep: usize, why: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassData {
    pub rep: usize,
    /// Elements of the centralizer C_G(rep), sorted.
    pub centralizer: Vec<usize>,
    /// Irreducible characters of the centralizer; values follow `centralizer`.
    pub characters: Vec<Vec<Cyclo>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupData {
    pub mul: Vec<Vec<usize>>,
    pub identity: usize,
    pub names: Vec<String>,
    pub classes: Vec<ClassData>,
}

impl GroupData {
    pub fn order(&self) -> usize {
        self.mul.len()
    }

    pub fn m(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        (0..self.order())
            .find(|&b| self.mul[a][b] == self.identity)
            .expect("every element has an inverse")
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul[x][a];
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> usize {
        (0..self.order()).fold(1, |acc, a| acc.lcm(&self.element_order(a)))
    }

    pub fn power(&self, a: usize, k: u64) -> usize {
        let mut x = self.identity;
        for _ in 0..k % self.element_order(a) as u64 {
            x = self.mul[x][a];
        }
        x
    }

    /// g h g⁻¹
    pub fn conjugate(&self, g: usize, h: usize) -> usize {
        self.mul[self.mul[g][h]][self.inverse(g)]
    }

    pub fn commute(&self, a: usize, b: usize) -> bool {
        self.mul[a][b] == self.mul[b][a]
    }

    /// Index of the class containing `x`.
    pub fn class_of(&self, x: usize) -> usize {
        self.classes
            .iter()
            .position(|c| (0..self.order()).any(|g| self.conjugate(g, c.rep) == x))
            .expect("classes cover the group")
    }

    /// Check group axioms, classes, centralizers and character orthogonality.
    pub fn validate(&self) -> Result<(), GroupError> {
        check_table(&self.mul, self.identity)?;
        let n = self.order();
        if self.names.len() != n {
            return Err(GroupError::Table("one name per element".into()));
        }
        let mut covered = vec![false; n];
        for c in &self.classes {
            let cent: Vec<usize> = (0..n).filter(|&g| self.commute(g, c.rep)).collect();
            if cent != c.centralizer {
                return Err(GroupError::Classes(format!(
                    "wrong centralizer for {}",
                    self.names[c.rep]
                )));
            }
            let orbit: Vec<usize> = (0..n).map(|g| self.conjugate(g, c.rep)).collect();
            if orbit.iter().any(|&x| covered[x]) {
                return Err(GroupError::Classes("representatives share a class".into()));
            }
            for x in orbit {
                covered[x] = true;
            }
            check_characters(self, c)?;
        }
        let total: usize = self
            .classes
            .iter()
            .map(|c| n / c.centralizer.len())
            .sum();
        if total != n || covered.iter().any(|&x| !x) {
            return Err(GroupError::Classes("class sizes do not sum to |G|".into()));
        }
        if self.classes.first().map(|c| c.rep) != Some(self.identity) {
            return Err(GroupError::Classes("the first class must be the identity".into()));
        }
        Ok(())
    }
}

fn check_table(mul: &[Vec<usize>], e: usize) -> Result<(), GroupError> {
    let n = mul.len();
    if n == 0 || mul.iter().any(|r| r.len() != n) || e >= n {
        return Err(GroupError::Table("table must be square and non-empty".into()));
    }
    for a in 0..n {
        if mul[e][a] != a || mul[a][e] != a {
            return Err(GroupError::Table("identity is not neutral".into()));
        }
        let mut seen = vec![false; n];
        for &x in &mul[a] {
            if x >= n || seen[x] {
                return Err(GroupError::Table(format!("row {a} is not a permutation")));
            }
            seen[x] = true;
        }
        for b in 0..n {
            for c in 0..n {
                if mul[mul[a][b]][c] != mul[a][mul[b][c]] {
                    return Err(GroupError::Table(format!("not associative at ({a},{b},{c})")));
                }
            }
        }
    }
    Ok(())
}

fn check_characters(g: &GroupData, c: &ClassData) -> Result<(), GroupError> {
    let h = &c.centralizer;
    let err = |why: String| GroupError::Characters { rep: c.rep, why };
    let k = (0..h.len()).filter(|&i| {
        // count conjugacy classes of the centralizer
        let x = h[i];
        !(0..i).any(|j| h.iter().any(|&y| g.conjugate(y, h[j]) == x))
    });
    let nclasses = k.count();
    if c.characters.len() != nclasses {
        return Err(err(format!(
            "{} characters for {} classes",
            c.characters.len(),
            nclasses
        )));
    }
    if !c.centralizer.contains(&c.rep) || !h.iter().all(|&x| g.commute(x, c.rep)) {
        return Err(err("representative is not central in its centralizer".into()));
    }
    let order = Cyclo::from_int(h.len() as i64);
    for (i, chi) in c.characters.iter().enumerate() {
        if chi.len() != h.len() {
            return Err(err(format!("character {i} has the wrong length")));
        }
        for (j, psi) in c.characters.iter().enumerate() {
            let ip = Cyclo::dot(chi.iter().zip(psi.iter().map(Cyclo::conj).collect::<Vec<_>>().iter()))
                .map_err(|e| err(e.to_string()))?;
            let want = if i == j { order.clone() } else { Cyclo::zero() };
            if ip != want {
                return Err(err(format!("characters {i} and {j} are not orthonormal")));
            }
        }
    }
    Ok(())
}

/// Build GroupData from a table, computing classes, centralizers and characters.
/// Centralizers may have at most one non-linear irreducible character.
pub fn from_table(
    mul: Vec<Vec<usize>>,
    identity: usize,
    names: Vec<String>,
) -> Result<GroupData, GroupError> {
    check_table(&mul, identity)?;
    let n = mul.len();
    let mut g = GroupData {
        mul,
        identity,
        names,
        classes: Vec::new(),
    };
    let mut seen = vec![false; n];
    let mut reps = vec![identity];
    reps.extend((0..n).filter(|&x| x != identity));
    for x in reps {
        if seen[x] {
            continue;
        }
        for h in 0..n {
            let y = g.conjugate(h, x);
            seen[y] = true;
        }
        let centralizer: Vec<usize> = (0..n).filter(|&h| g.commute(h, x)).collect();
        let characters = irreducible_characters(&g, &centralizer).map_err(|why| {
            GroupError::Characters { rep: x, why }
        })?;
        g.classes.push(ClassData {
            rep: x,
            centralizer,
            characters,
        });
    }
    Ok(g)
}

fn irreducible_characters(g: &GroupData, h: &[usize]) -> Result<Vec<Vec<Cyclo>>, String> {
    let pos = |x: usize| h.iter().position(|&y| y == x);
    let e = h.iter().fold(1, |acc, &x| acc.lcm(&g.element_order(x)));
    // greedy generating set
    let mut gens: Vec<usize> = Vec::new();
    let mut span = vec![g.identity];
    for &x in h {
        if span.contains(&x) {
            continue;
        }
        gens.push(x);
        span = closure(g, &gens);
    }
    let mut linear: Vec<Vec<usize>> = Vec::new();
    let total = (e as u64).pow(gens.len() as u32);
    for code in 0..total {
        let mut c = code;
        let vals: Vec<usize> = gens
            .iter()
            .map(|_| {
                let v = (c % e as u64) as usize;
                c /= e as u64;
                v
            })
            .collect();
        // exponents of ξ_e, filled by breadth-first multiplication
        let mut chi: Vec<Option<usize>> = vec![None; h.len()];
        chi[pos(g.identity).unwrap()] = Some(0);
        let mut queue = vec![g.identity];
        let mut ok = true;
        while let Some(x) = queue.pop() {
            let cx = chi[pos(x).unwrap()].unwrap();
            for (gi, &gen) in gens.iter().enumerate() {
                let y = g.m(x, gen);
                let v = (cx + vals[gi]) % e;
                let p = pos(y).unwrap();
                match chi[p] {
                    None => {
                        chi[p] = Some(v);
                        queue.push(y);
                    }
                    Some(w) if w != v => {
                        ok = false;
                        break;
                    }
                    _ => {}
                }
            }
            if !ok {
                break;
            }
        }
        if !ok {
            continue;
        }
        let chi: Vec<usize> = chi.into_iter().map(|v| v.unwrap()).collect();
        let hom = h.iter().enumerate().all(|(i, &x)| {
            h.iter()
                .enumerate()
                .all(|(j, &y)| chi[pos(g.m(x, y)).unwrap()] == (chi[i] + chi[j]) % e)
        });
        if hom {
            linear.push(chi);
        }
    }
    let mut out: Vec<Vec<Cyclo>> = linear
        .iter()
        .map(|chi| {
            chi.iter()
                .map(|&k| Cyclo::root_of_unity(e as u32, k as i64))
                .collect()
        })
        .collect();
    let rest = h.len() - linear.len();
    if rest > 0 {
        let d = (rest as f64).sqrt().round() as usize;
        if d * d != rest {
            return Err(format!("{rest} is not a square; unsupported centralizer"));
        }
        let chi: Vec<Cyclo> = h
            .iter()
            .enumerate()
            .map(|(i, &x)| {
                let reg = if x == g.identity { h.len() as i64 } else { 0 };
                let lin = out.iter().fold(Cyclo::zero(), |acc, c| &acc + &c[i]);
                (Cyclo::from_int(reg) - lin) / Cyclo::from_int(d as i64)
            })
            .collect();
        out.push(chi);
    }
    Ok(out)
}

fn closure(g: &GroupData, gens: &[usize]) -> Vec<usize> {
    let mut out = vec![g.identity];
    let mut i = 0;
    while i < out.len() {
        for &s in gens {
            let y = g.m(out[i], s);
            if !out.contains(&y) {
                out.push(y);
            }
        }
        i += 1;
    }
    out
}

/// Multiplication table of the permutation group generated by `gens`.
fn permutation_group(gens: &[Vec<usize>], name: impl Fn(&[usize]) -> String) -> GroupData {
    let deg = gens[0].len();
    let id: Vec<usize> = (0..deg).collect();
    let mut elems = vec![id];
    let mut i = 0;
    // p·q means apply q first, then p
    let compose = |p: &[usize], q: &[usize]| -> Vec<usize> { q.iter().map(|&x| p[x]).collect() };
    while i < elems.len() {
        for s in gens {
            let y = compose(&elems[i], s);
            if !elems.contains(&y) {
                elems.push(y);
            }
        }
        i += 1;
    }
    let n = elems.len();
    let mul = (0..n)
        .map(|a| {
            (0..n)
                .map(|b| {
                    let p = compose(&elems[a], &elems[b]);
                    elems.iter().position(|e| *e == p).unwrap()
                })
                .collect()
        })
        .collect();
    let names = elems.iter().map(|p| name(p)).collect();
    from_table(mul, 0, names).expect("permutation groups in the catalog are supported")
}

fn cycle_name(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for s in 0..p.len() {
        if seen[s] || p[s] == s {
            continue;
        }
        out.push('(');
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            out.push_str(&(x + 1).to_string());
            x = p[x];
        }
        out.push(')');
    }
    if out.is_empty() {
        "e".into()
    } else {
        out
    }
}

fn cyclic(n: usize) -> GroupData {
    let mul = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
    let names = (0..n).map(|a| a.to_string()).collect();
    from_table(mul, 0, names).expect("cyclic groups are abelian")
}

fn quaternion() -> GroupData {
    // element 2u + s is (−1)^s·unit[u], unit = 1, i, j, k
    const UNIT: [&str; 4] = ["1", "i", "j", "k"];
    let unit_mul = |a: usize, b: usize| -> (usize, usize) {
        match (a, b) {
            (0, x) | (x, 0) => (x, 0),
            (x, y) if x == y => (0, 1),
            (1, 2) => (3, 0),
            (2, 3) => (1, 0),
            (3, 1) => (2, 0),
            (2, 1) => (3, 1),
            (3, 2) => (1, 1),
            (1, 3) => (2, 1),
            _ => unreachable!(),
        }
    };
    let mul = (0..8)
        .map(|a| {
            (0..8)
                .map(|b| {
                    let (u, s) = unit_mul(a / 2, b / 2);
                    2 * u + (s + a % 2 + b % 2) % 2
                })
                .collect()
        })
        .collect();
    let names = (0..8)
        .map(|x| format!("{}{}", if x % 2 == 1 { "-" } else { "" }, UNIT[x / 2]))
        .collect();
    from_table(mul, 0, names).expect("Q8 has one non-linear irrep")
}

/// Catalog groups: `z<n>` (or `zn` with a separate size), `s3`, `d4`, `q8`.
pub fn builtin_group(name: &str) -> Result<GroupData, GroupError> {
    let lower = name.to_ascii_lowercase();
    match lower.as_str() {
        "s3" => Ok(permutation_group(
            &[vec![1, 0, 2], vec![1, 2, 0]],
            cycle_name,
        )),
        "d4" => Ok(permutation_group(
            &[vec![1, 2, 3, 0], vec![0, 3, 2, 1]],
            cycle_name,
        )),
        "q8" => Ok(quaternion()),
        _ => {
            let n = lower
                .strip_prefix('z')
                .and_then(|s| s.parse::<usize>().ok())
                .filter(|&n| n >= 1)
                .ok_or_else(|| GroupError::Unknown(name.to_string()))?;
            Ok(cyclic(n))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_validate() {
        for name in ["z1", "z2", "z3", "z6", "s3", "d4", "q8"] {
            let g = builtin_group(name).unwrap();
            g.validate().unwrap_or_else(|e| panic!("{name}: {e}"));
        }
    }

    #[test]
    fn s3_classes() {
        let g = builtin_group("s3").unwrap();
        let mut sizes: Vec<usize> = g.classes.iter().map(|c| c.centralizer.len()).collect();
        sizes.sort();
        assert_eq!(sizes, vec![2, 3, 6]);
        assert_eq!(g.exponent(), 6);
    }

    #[test]
    fn q8_exponent() {
        let g = builtin_group("q8").unwrap();
        assert_eq!(g.order(), 8);
        assert_eq!(g.exponent(), 4);
        assert_eq!(g.classes.len(), 5);
    }

    #[test]
    fn unknown_name() {
        assert!(builtin_group("a5").is_err());
    }
}
