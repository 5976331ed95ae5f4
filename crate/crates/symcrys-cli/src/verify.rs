//! Verification batteries behind `verify-uq` and `verify-vtheta`.
//!
//! Random inputs are drawn from a fixed seed so that reports are
//! deterministic artifacts.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use symcrys_core::crystal::{Carrier, Engine};
use symcrys_core::rootdata::{DominantWeight, RootDatum, Weight};
use symcrys_core::scalars::{quantum_integer, LaurentPoly, RatFunc};
use symcrys_core::uqminus::{FreeElement, UqAlgebra, Word};
use symcrys_core::vtheta::{VElement, VModule, VWord};
use symcrys_core::Rat;

use crate::document::CheckDoc;

const SEED: u64 = 0x0c0ffee;

fn random_coeff(rng: &mut StdRng) -> RatFunc {
    let mut p = LaurentPoly::zero();
    for _ in 0..rng.random_range(1..=2) {
        let e = rng.random_range(-2..=2);
        let c = *[1i64, -1, 2, -2, 3].get(rng.random_range(0..5)).unwrap();
        p = p.add(&LaurentPoly::from_terms([(e, Rat::from_integer(c.into()))]));
    }
    if p.is_zero() {
        p = LaurentPoly::one();
    }
    RatFunc::from_laurent(p)
}

fn random_letters(rng: &mut StdRng, indices: &[i64], len: usize) -> Vec<i64> {
    (0..len)
        .map(|_| indices[rng.random_range(0..indices.len())])
        .collect()
}

fn random_free(rng: &mut StdRng, indices: &[i64], max_len: usize) -> FreeElement {
    let len = rng.random_range(1..=max_len);
    let base = random_letters(rng, indices, len);
    let weight = Word::new(base.clone()).weight();
    let mut out = FreeElement::zero(weight);
    for _ in 0..rng.random_range(1..=3) {
        let mut perm = base.clone();
        for k in (1..perm.len()).rev() {
            perm.swap(k, rng.random_range(0..=k));
        }
        out = out.add(&FreeElement::single(Word::new(perm), random_coeff(rng)));
    }
    out
}

fn random_velem(rng: &mut StdRng, m: &VModule, max_len: usize) -> VElement {
    let indices = m.rd().indices().to_vec();
    let len = rng.random_range(1..=max_len);
    let base = random_letters(rng, &indices, len);
    let mut out = m.single(VWord::new(base.clone()), random_coeff(rng));
    for _ in 0..rng.random_range(0..=2) {
        let mut perm = base.clone();
        for k in (1..perm.len()).rev() {
            perm.swap(k, rng.random_range(0..=k));
        }
        out = out.add(&m.single(VWord::new(perm), random_coeff(rng)));
    }
    out
}

fn check(name: &str, pass: bool, detail: Option<String>) -> CheckDoc {
    CheckDoc {
        name: name.to_string(),
        pass,
        detail,
    }
}

/// The algebra-side battery: q-boson commutation, both adjunctions, form
/// symmetry, Serre elements in the radical, and modified-operator inversion.
pub fn verify_uq(rd: &RootDatum, samples: usize, depth: u32) -> Vec<CheckDoc> {
    let u = UqAlgebra::new(rd.clone());
    let e = Engine::new(&u);
    let indices = rd.indices().to_vec();
    let mut rng = StdRng::seed_from_u64(SEED);
    let mut checks = Vec::new();

    // q-boson identity on random words of length <= 5.
    let mut witness = None;
    for _ in 0..samples {
        let len = rng.random_range(1..=5);
        let a = FreeElement::single(
            Word::new(random_letters(&mut rng, &indices, len)),
            RatFunc::one(),
        );
        let i = indices[rng.random_range(0..indices.len())];
        let j = indices[rng.random_range(0..indices.len())];
        let lhs = u.e_prime(i, &u.mul_f(j, &a));
        let rhs = u
            .mul_f(j, &u.e_prime(i, &a))
            .scale(&RatFunc::q_power(-rd.pairing(i, j)))
            .add(&if i == j {
                a.clone()
            } else {
                FreeElement::zero(a.weight().clone())
            });
        if lhs != rhs {
            witness = Some(format!("colors ({i}, {j}) on {a}"));
            break;
        }
    }
    checks.push(check("q-boson-identity", witness.is_none(), witness));

    // Adjunctions and symmetry of the bilinear form.
    let mut witness = None;
    for _ in 0..samples.min(100) {
        let a = random_free(&mut rng, &indices, 3);
        let b = random_free(&mut rng, &indices, 3);
        if u.kashiwara_form(&a, &b) != u.kashiwara_form(&b, &a) {
            witness = Some(format!("symmetry fails on {a} | {b}"));
            break;
        }
        let i = indices[rng.random_range(0..indices.len())];
        if u.kashiwara_form(&u.e_prime(i, &a), &b) != u.kashiwara_form(&a, &u.mul_f(i, &b)) {
            witness = Some(format!("left adjunction fails at color {i}"));
            break;
        }
        let b_fi = FreeElement::from_terms(
            b.weight().sub(&Weight::alpha(i)),
            b.terms().map(|(w, c)| (w.append(i), c.clone())),
        );
        if u.kashiwara_form(&u.e_star(i, &a), &b) != u.kashiwara_form(&a, &b_fi) {
            witness = Some(format!("right adjunction fails at color {i}"));
            break;
        }
    }
    checks.push(check(
        "form-symmetry-and-adjunctions",
        witness.is_none(),
        witness,
    ));

    // Serre elements pair to zero with every weight-mate (adjacent pairs).
    let mut witness = None;
    'serre: for &i in &indices {
        for &j in &indices {
            if i == j || rd.pairing(i, j) != -1 {
                continue;
            }
            let two = RatFunc::from_laurent(quantum_integer(2, rd.d(i)).unwrap());
            let t1 = u.mul_f(i, &u.mul_f(i, &u.mul_f(j, &u.unit())));
            let t2 = u
                .mul_f(i, &u.mul_f(j, &u.mul_f(i, &u.unit())))
                .scale(&two.neg());
            let t3 = u.mul_f(j, &u.mul_f(i, &u.mul_f(i, &u.unit())));
            let serre = t1.add(&t2).add(&t3);
            if !u.is_zero(&serre) {
                witness = Some(format!("Serre element for ({i}, {j}) not in radical"));
                break 'serre;
            }
        }
    }
    checks.push(check("serre-radical", witness.is_none(), witness));

    // Modified operators invert each other along generated words.
    let mut witness = None;
    'walk: for _ in 0..samples.min(50) {
        let mut x = u.unit();
        for _ in 0..rng.random_range(1..=depth.max(1)) {
            let i = indices[rng.random_range(0..indices.len())];
            let fx = match e.f_tilde(i, &x) {
                Ok(v) => v,
                Err(err) => {
                    witness = Some(format!("lowering failed: {err}"));
                    break 'walk;
                }
            };
            match e.e_tilde(i, &fx) {
                Ok(back) if u.equal(&back, &x) => {}
                Ok(_) => {
                    witness = Some(format!("raising does not invert lowering at color {i}"));
                    break 'walk;
                }
                Err(err) => {
                    witness = Some(format!("raising failed: {err}"));
                    break 'walk;
                }
            }
            x = fx;
        }
    }
    checks.push(check(
        "modified-operators-invert",
        witness.is_none(),
        witness,
    ));
    checks
}

/// The module-side battery: the twisted commutation relation, T-relations,
/// form adjunction, cross-block orthogonality, the vac'-model crosscheck and
/// bar stability of the radicals.
pub fn verify_vtheta(
    rd: &RootDatum,
    lambda: &DominantWeight,
    samples: usize,
    depth: u32,
) -> Vec<CheckDoc> {
    let m = VModule::new(rd.clone(), lambda.clone());
    let uq = UqAlgebra::new(rd.clone());
    let indices = rd.indices().to_vec();
    let mut rng = StdRng::seed_from_u64(SEED);
    let mut checks = Vec::new();

    // E_i F_j = q^{-(a_i,a_j)} F_j E_i + delta_ij + delta_{theta(i),j} T_i.
    let mut witness = None;
    for _ in 0..samples {
        let un = random_velem(&mut rng, &m, 3);
        let i = indices[rng.random_range(0..indices.len())];
        let j = indices[rng.random_range(0..indices.len())];
        let lhs = m.act_e(i, &m.act_f(j, &un));
        let mut rhs = m
            .act_f(j, &m.act_e(i, &un))
            .scale(&RatFunc::q_power(-rd.pairing(i, j)));
        if i == j {
            rhs = rhs.add(&un);
        }
        if rd.theta(i) == j {
            rhs = rhs.add(&m.act_t(i, &un));
        }
        if lhs != rhs {
            witness = Some(format!("colors ({i}, {j})"));
            break;
        }
    }
    checks.push(check("commutation-relation", witness.is_none(), witness));

    // T-relations.
    let mut witness = None;
    for _ in 0..samples.min(100) {
        let un = random_velem(&mut rng, &m, 3);
        let i = indices[rng.random_range(0..indices.len())];
        let j = indices[rng.random_range(0..indices.len())];
        if m.act_t(rd.theta(i), &un) != m.act_t(i, &un) {
            witness = Some(format!("T_theta({i}) != T_{i}"));
            break;
        }
        if m.act_t(i, &m.act_t(j, &un)) != m.act_t(j, &m.act_t(i, &un)) {
            witness = Some(format!("T_{i} and T_{j} do not commute"));
            break;
        }
        let scal = -(rd.pairing(i, j) + rd.pairing(rd.theta(i), j));
        if m.act_t(i, &m.act_f(j, &un))
            != m.act_f(j, &m.act_t(i, &un)).scale(&RatFunc::q_power(scal))
        {
            witness = Some(format!("conjugation scalar wrong at ({i}, {j})"));
            break;
        }
    }
    checks.push(check("t-relations", witness.is_none(), witness));

    // Form symmetry and adjunction.
    let mut witness = None;
    for _ in 0..samples.min(100) {
        let a = random_velem(&mut rng, &m, 3);
        let b = random_velem(&mut rng, &m, 3);
        if m.v_form(&a, &b) != m.v_form(&b, &a) {
            witness = Some("symmetry fails".to_string());
            break;
        }
        let i = indices[rng.random_range(0..indices.len())];
        if m.v_form(&m.act_e(i, &a), &b) != m.v_form(&a, &m.act_f(i, &b)) {
            witness = Some(format!("adjunction fails at color {i}"));
            break;
        }
    }
    checks.push(check(
        "form-symmetry-and-adjunction",
        witness.is_none(),
        witness,
    ));

    // Cross-block orthogonality, exhaustive on length <= 2.
    let mut witness = None;
    'ortho: for len in 1..=2usize {
        let mut words: Vec<Vec<i64>> = vec![Vec::new()];
        for _ in 0..len {
            words = words
                .iter()
                .flat_map(|w| {
                    indices.iter().map(move |&i| {
                        let mut w2 = w.clone();
                        w2.push(i);
                        w2
                    })
                })
                .collect();
        }
        for w1 in &words {
            for w2 in &words {
                let x = m.single(VWord::new(w1.clone()), RatFunc::one());
                let y = m.single(VWord::new(w2.clone()), RatFunc::one());
                if x.block() != y.block() && !m.v_form(&x, &y).is_zero() {
                    witness = Some(format!("{w1:?} vs {w2:?}"));
                    break 'ortho;
                }
            }
        }
    }
    checks.push(check(
        "cross-block-orthogonality",
        witness.is_none(),
        witness,
    ));

    // vac'-model crosscheck for every word up to length min(depth, 4).
    let mut witness = None;
    let max_len = depth.min(4) as usize;
    let mut words: Vec<Vec<i64>> = vec![Vec::new()];
    'psi: for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &words {
            for &i in &indices {
                let mut w2 = w.clone();
                w2.push(i);
                next.push(w2);
            }
        }
        for w in &next {
            for &i in &indices {
                if !m.psi_crosscheck(&uq, &VWord::new(w.clone()), i) {
                    witness = Some(format!("word {w:?} color {i}"));
                    break 'psi;
                }
            }
        }
        words = next;
    }
    checks.push(check(
        "vacprime-model-crosscheck",
        witness.is_none(),
        witness,
    ));

    // Bar stability of the Gram radicals on all blocks reached by depth.
    let e = Engine::new(&m);
    let build = e.build(depth.min(3));
    let mut witness = None;
    let blocks: std::collections::BTreeSet<_> =
        build.graph.nodes.iter().map(|n| n.block.clone()).collect();
    for b in blocks {
        if !m.bar_radical_stable(&b) {
            witness = Some(m.block_label(&b));
            break;
        }
    }
    checks.push(check("bar-radical-stability", witness.is_none(), witness));
    checks
}
