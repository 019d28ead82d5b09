use super::group::GroupData;
use super::{minimize_matrix, CatalogError, Metadata};
use crate::arith::lift_unit;
use crate::cyclo::{Cyclo, Rational};
use crate::galois::extract_galois;
use crate::matrix::Matrix;
use crate::moddata::ModularData;

/// A simple object of D(G): a class representative and an irreducible
/// character of its centralizer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DoubleLabel {
    pub class: usize,
    pub chi: usize,
}

pub fn double_labels(g: &GroupData) -> Vec<DoubleLabel> {
    g.classes
        .iter()
        .enumerate()
        .flat_map(|(class, c)| (0..c.characters.len()).map(move |chi| DoubleLabel { class, chi }))
        .collect()
}

fn character_at(g: &GroupData, class: usize, chi: usize, x: usize) -> Option<&Cyclo> {
    let c = &g.classes[class];
    c.centralizer
        .iter()
        .position(|&y| y == x)
        .map(|p| &c.characters[chi][p])
}

/// S_{(a,χ),(b,χ')} = Σ_{g : [a, gbg⁻¹] = 1} χ(gbg⁻¹)·χ'(g⁻¹ag) / (|C(a)|·|C(b)|)
/// and T_{(a,χ)} = χ(a)/χ(e).
pub fn quantum_double_data(g: &GroupData) -> Result<ModularData, CatalogError> {
    g.validate()?;
    let labels = double_labels(g);
    let n = labels.len();
    let order = g.order();
    let s = Matrix::try_from_fn(n, |i, j| {
        let (x, y) = (labels[i], labels[j]);
        let a = g.classes[x.class].rep;
        let b = g.classes[y.class].rep;
        let mut sum = Cyclo::zero();
        for h in 0..order {
            let bh = g.conjugate(h, b);
            if !g.commute(a, bh) {
                continue;
            }
            let ah = g.conjugate(g.inverse(h), a);
            let u = character_at(g, x.class, x.chi, bh).expect("bh centralizes a");
            let v = character_at(g, y.class, y.chi, ah).expect("ah centralizes b");
            sum = sum.checked_add(&u.checked_mul(v)?)?;
        }
        let norm = g.classes[x.class].centralizer.len() * g.classes[y.class].centralizer.len();
        Ok(sum.scale(&Rational::new(1.into(), (norm as i64).into())))
    })?;
    let (s, m) = minimize_matrix(&s)?;
    let t = labels
        .iter()
        .map(|l| twist(g, *l))
        .collect::<Result<Vec<_>, _>>()?;
    let names = labels
        .iter()
        .map(|l| format!("({},χ{})", g.names[g.classes[l.class].rep], l.chi))
        .collect();
    Ok(ModularData::with_order(s, t, m)?.with_labels(names))
}

/// The exponent r with χ(a)/χ(e) = e^{2πir}.
fn twist(g: &GroupData, l: DoubleLabel) -> Result<Rational, CatalogError> {
    let a = g.classes[l.class].rep;
    let chi_a = character_at(g, l.class, l.chi, a).unwrap();
    let chi_e = character_at(g, l.class, l.chi, g.identity).unwrap();
    let ratio = chi_a.checked_div(chi_e)?;
    let k = g.element_order(a);
    for j in 0..k {
        if Cyclo::root_of_unity(k as u32, j as i64) == ratio {
            return Ok(Rational::new((j as i64).into(), (k as i64).into()));
        }
    }
    Err(CatalogError::NoGaloisImage {
        ell: 1,
        why: format!("χ(a)/χ(e) is not a root of unity for {}", g.names[a]),
    })
}

/// c = 0 and h = r with 0 ≤ r < 1.
pub fn double_metadata(g: &GroupData) -> Result<Metadata, CatalogError> {
    let h = double_labels(g)
        .into_iter()
        .map(|l| twist(g, l))
        .collect::<Result<_, _>>()?;
    Ok(Metadata {
        c: Rational::from_integer(0.into()),
        h,
        note: Some(format!("quantum double of a group of order {}", g.order())),
    })
}

/// Compare the Galois permutation read off S with the group-theoretic one
/// (a, χ) ↦ (b a^ℓ b⁻¹, σ_ℓ(χ^{b⁻¹})), and check that r_{σa} = ℓ²r_a.
pub fn double_galois_check(g: &GroupData, ell: i64) -> Result<bool, CatalogError> {
    let md = quantum_double_data(g)?;
    let e = g.exponent() as u64;
    let l = lift_unit(ell, e, md.full_order()).ok_or(CatalogError::NoGaloisImage {
        ell,
        why: format!("not coprime to the exponent {e}"),
    })?;
    let gs = extract_galois(&md, l)?;
    let labels = double_labels(g);
    let lpow = l.rem_euclid(e as i64) as u64;
    for (i, x) in labels.iter().enumerate() {
        let a = g.classes[x.class].rep;
        let al = g.power(a, lpow);
        let target = g.class_of(al);
        let rep = g.classes[target].rep;
        let b = (0..g.order())
            .find(|&b| g.conjugate(b, al) == rep)
            .expect("a^ℓ is conjugate to its class representative");
        let binv = g.inverse(b);
        let c = &g.classes[target];
        let psi: Vec<Cyclo> = c
            .centralizer
            .iter()
            .map(|&h| {
                character_at(g, x.class, x.chi, g.conjugate(binv, h))
                    .expect("b⁻¹hb centralizes a")
                    .galois(l)
            })
            .collect::<Result<_, _>>()?;
        let Some(j) = c.characters.iter().position(|chi| *chi == psi) else {
            return Ok(false);
        };
        let want = labels
            .iter()
            .position(|y| y.class == target && y.chi == j)
            .unwrap();
        if gs.perm[i] != want {
            return Ok(false);
        }
    }
    let t = md.t_exponents();
    let l2 = Rational::from_integer((l as i128 * l as i128).into());
    Ok((0..md.size()).all(|a| t[gs.perm[a]] == crate::moddata::frac_mod1(&(&t[a] * &l2))))
}
