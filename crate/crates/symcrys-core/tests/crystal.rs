//! Crystal-engine integration: string decompositions, modified operators,
//! lattices, graphs, global bases and the dimension formula, on both
//! carriers.

use std::collections::{BTreeMap, BTreeSet};

use symcrys_core::crystal::{check_balanced, dim_formula_eval, global_basis, Carrier, Engine};
use symcrys_core::rootdata::{DominantWeight, RootDatum, Weight};
use symcrys_core::scalars::RatFunc;
use symcrys_core::uqminus::{FreeElement, UqAlgebra, Word};
use symcrys_core::vtheta::{VModule, VWord};

fn odd3() -> RootDatum {
    RootDatum::odd_window(3).unwrap()
}

fn v_zero(rd: RootDatum) -> VModule {
    VModule::new(rd, DominantWeight::zero())
}

fn fword(letters: &[i64]) -> FreeElement {
    FreeElement::single(Word::new(letters.to_vec()), RatFunc::one())
}

#[test]
fn uq_string_decomposition_and_modified_operators() {
    let u = UqAlgebra::new(odd3());
    let e = Engine::new(&u);
    // f~_1(1) = f_1
    let f1 = e.f_tilde(1, &u.unit()).unwrap();
    assert_eq!(f1, fword(&[1]));
    // string of f_1 with color 1: pure n = 1 component
    let parts = e.string_decompose(1, &f1).unwrap();
    assert_eq!(parts.len(), 2);
    assert!(u.is_zero(&parts[0]));
    assert_eq!(parts[1], u.unit());
    // f~_1(f_1) = f_1^{(2)}
    let f11 = e.f_tilde(1, &f1).unwrap();
    assert!(u.equal(&f11, &u.mul_f_divided(1, 2, &u.unit())));
    // e~ inverts, and e~_3 kills f_1
    assert_eq!(e.e_tilde(1, &f1).unwrap(), u.unit());
    assert!(u.is_zero(&e.e_tilde(3, &f1).unwrap()));
    // e~ f~ = id on deeper elements
    let x = e.f_tilde(1, &e.f_tilde(3, &f1).unwrap()).unwrap();
    let back = e.e_tilde(1, &x).unwrap();
    assert!(u.equal(&back, &e.f_tilde(3, &f1).unwrap()));
}

#[test]
fn vtheta_string_decomposition_examples() {
    let m = v_zero(odd3());
    let e = Engine::new(&m);
    let f1vac = m.act_f(1, &m.vacuum());
    // color 1: u_1 = vac is the only component
    let parts = e.string_decompose(1, &f1vac).unwrap();
    assert_eq!(parts.len(), 2);
    assert!(m.is_zero(&parts[0]));
    assert!(m.equal(&parts[1], &m.vacuum()));
    // color 3: u_0 = F_1 vac
    let parts = e.string_decompose(3, &f1vac).unwrap();
    assert!(m.equal(&parts[0], &f1vac));
    assert!(parts.iter().skip(1).all(|p| m.is_zero(p)));
    // F~_1 vac = F_1 vac; E~_1 F_1 vac = vac; F~_{-1} vac = F_1 vac in V
    let lowered = e.f_tilde(1, &m.vacuum()).unwrap();
    assert!(m.equal(&lowered, &f1vac));
    assert!(m.equal(&e.e_tilde(1, &lowered).unwrap(), &m.vacuum()));
    let lowered_neg = e.f_tilde(-1, &m.vacuum()).unwrap();
    assert!(m.equal(&lowered_neg, &f1vac));
}

#[test]
fn binfty_depth_one_nodes_are_unit_and_generators() {
    let u = UqAlgebra::new(odd3());
    let e = Engine::new(&u);
    let b = e.build(1);
    assert!(b.reports.is_empty(), "{:?}", b.reports);
    assert_eq!(b.graph.nodes.len(), 1 + u.rd().indices().len());
    // one arrow per color out of the unit
    assert_eq!(b.graph.arrows.len(), u.rd().indices().len());
    for a in &b.graph.arrows {
        assert_eq!(a.from, 0);
    }
}

#[test]
fn binfty_depth_two_rank_two_counts_match_gram_rank() {
    let u = UqAlgebra::new(RootDatum::finite_a_path(&[1, 3]).unwrap());
    let e = Engine::new(&u);
    let b = e.build(2);
    assert!(b.reports.is_empty(), "{:?}", b.reports);
    // weights 0, -a1, -a3, -2a1, -2a3, -a1-a3; the last has two nodes
    let mut counts: BTreeMap<Weight, usize> = BTreeMap::new();
    for n in &b.graph.nodes {
        *counts.entry(n.block.clone()).or_default() += 1;
    }
    assert_eq!(counts.len(), 6);
    let w11 = Weight::alpha(1).add(&Weight::alpha(3)).neg();
    assert_eq!(counts[&w11], 2);
    assert_eq!(b.graph.nodes.len(), 7);
    // node count per weight equals the Gram-rank dimension
    for (w, count) in counts {
        assert_eq!(count, u.weight_basis(&w).dim(), "weight {w}");
    }
}

#[test]
fn binfty_node_counts_match_dimensions_to_height_three() {
    let u = UqAlgebra::new(RootDatum::finite_a_path(&[1, 3]).unwrap());
    let e = Engine::new(&u);
    let b = e.build(3);
    assert!(b.reports.is_empty());
    let mut counts: BTreeMap<Weight, usize> = BTreeMap::new();
    for n in &b.graph.nodes {
        *counts.entry(n.block.clone()).or_default() += 1;
    }
    for (w, count) in counts {
        assert_eq!(count, u.weight_basis(&w).dim(), "weight {w}");
    }
}

#[test]
fn vtheta_lattice_small_depths() {
    let m = v_zero(odd3());
    let e = Engine::new(&m);
    // depth 0: single block with one vector
    let b0 = e.build(0);
    assert_eq!(b0.lattice.blocks.len(), 1);
    assert_eq!(b0.graph.nodes.len(), 1);
    // depth 1: the level-one ±1 block gets exactly one pivot
    let b1 = e.build(1);
    let f1 = m.act_f(1, &m.vacuum());
    let blk = m.block_of(&f1);
    assert_eq!(b1.lattice.block(&blk).unwrap().rank(), 1);
    // depth 2: the 2(a1 + a-1) block has two independent pivots
    let b2 = e.build(2);
    let f11 = m.act_f(1, &f1);
    let blk2 = m.block_of(&f11);
    assert_eq!(b2.lattice.block(&blk2).unwrap().rank(), 2);
}

#[test]
fn reduce_mod_q_examples() {
    let m = v_zero(odd3());
    let e = Engine::new(&m);
    let b = e.build(2);
    // vac reduces to a unit vector
    let vac_coords = m.coords(&m.vacuum());
    let blk0 = m.block_of(&m.vacuum());
    let rep = b
        .lattice
        .block(&blk0)
        .unwrap()
        .reduce_mod_q(&vac_coords)
        .unwrap();
    assert_eq!(rep.len(), 1);
    assert_eq!(rep[0], symcrys_core::Rat::from_integer(1.into()));
    // F_1 vac - F_{-1} vac is zero in V, so it reduces to the zero vector
    let f1 = m.act_f(1, &m.vacuum());
    let fm1 = m.act_f(-1, &m.vacuum());
    let diff = f1.sub(&fm1);
    assert!(m.is_zero(&diff));
    // q * (lattice basis vector) reduces to zero mod q
    let blk = m.block_of(&f1);
    let lat = b.lattice.block(&blk).unwrap();
    let scaled: Vec<RatFunc> = lat.rows[0]
        .coords
        .iter()
        .map(|c| c.mul(&RatFunc::q_power(1)))
        .collect();
    let rep = lat.reduce_mod_q(&scaled).unwrap();
    assert!(rep
        .iter()
        .all(|x| x == &symcrys_core::Rat::from_integer(0.into())));
}

/// The ±1-colored part of the crystal graph of `B_theta(0)`: one node per
/// level at depth one, a branch at depth two, paired arrows at depth three,
/// and the diamond re-merging at depth four.
#[test]
fn vtheta_figure_one_diamond_to_depth_four() {
    let m = v_zero(odd3());
    let e = Engine::new(&m);
    let b = e.build(4);
    assert!(b.reports.is_empty(), "{:?}", b.reports);
    let node = |w: &[i64]| b.node_of_word[&w.to_vec()];
    // level 1: both colors reach the same node
    assert_eq!(node(&[1]), node(&[-1]));
    // level 2: branching
    assert_ne!(node(&[1, 1]), node(&[1, -1]));
    // level 3: each branch has paired arrows to a single node
    assert_eq!(node(&[1, 1, 1]), node(&[1, 1, -1]));
    assert_eq!(node(&[1, -1, 1]), node(&[1, -1, -1]));
    assert_ne!(node(&[1, 1, 1]), node(&[1, -1, 1]));
    // level 4: the inner arrows re-merge (diamond), the outer stay apart
    assert_eq!(node(&[1, 1, 1, -1]), node(&[1, -1, 1, 1]));
    assert_eq!(node(&[1, 1, -1, -1]), node(&[1, -1, -1, 1]));
    assert_ne!(node(&[1, 1, 1, 1]), node(&[1, 1, 1, -1]));
    assert_ne!(node(&[1, -1, 1, -1]), node(&[1, 1, 1, -1]));
    assert_ne!(node(&[1, 1, 1, 1]), node(&[1, -1, 1, -1]));
    // exactly 3 distinct level-4 nodes over the colors ±1
    let mut level4 = BTreeSet::new();
    for w in [[1, 1, 1, 1], [1, 1, 1, -1], [1, -1, 1, 1], [1, -1, 1, -1]] {
        level4.insert(node(&w));
    }
    assert_eq!(level4.len(), 3);
}

/// The ±n-colored part for odd n >= 3 is a chain with paired arrows.
#[test]
fn vtheta_figure_two_chain_for_color_three() {
    let m = v_zero(odd3());
    let e = Engine::new(&m);
    let b = e.build(3);
    assert!(b.reports.is_empty());
    let node = |w: &[i64]| b.node_of_word[&w.to_vec()];
    assert_eq!(node(&[3]), node(&[-3]));
    assert_eq!(node(&[3, 3]), node(&[3, -3]));
    assert_eq!(node(&[3, 3, 3]), node(&[3, 3, -3]));
    // chain: consecutive levels are distinct nodes
    assert_ne!(node(&[3]), node(&[3, 3]));
    assert_ne!(node(&[3, 3]), node(&[3, 3, 3]));
}

#[test]
fn lattice_stability_under_raising() {
    let m = v_zero(odd3());
    let e = Engine::new(&m);
    let b = e.build(3);
    let reports = e.check_lattice_stability(&b);
    assert!(reports.is_empty(), "{:?}", reports);
}

#[test]
fn global_basis_trivial_blocks() {
    let m = v_zero(odd3());
    let e = Engine::new(&m);
    let b = e.build(2);
    // block (0, 0): G = vac
    let blk0 = m.block_of(&m.vacuum());
    let gbb = global_basis(&e, &b, &blk0).unwrap();
    assert!(gbb.reports.is_empty());
    assert!(m.equal(&gbb.lower[0], &m.vacuum()));
    assert!(m.equal(&gbb.upper[0], &m.vacuum()));
    // level-1 block: G = F_1 vac (already bar-fixed)
    let f1 = m.act_f(1, &m.vacuum());
    let blk1 = m.block_of(&f1);
    let gbb = global_basis(&e, &b, &blk1).unwrap();
    assert!(gbb.reports.is_empty());
    assert_eq!(gbb.lower.len(), 1);
    assert!(m.equal(&gbb.lower[0], &f1));
}

#[test]
fn global_basis_and_balanced_vtheta_depth_three() {
    let m = v_zero(odd3());
    let e = Engine::new(&m);
    let b = e.build(3);
    assert!(b.reports.is_empty());
    let blocks: BTreeSet<_> = b.graph.nodes.iter().map(|n| n.block.clone()).collect();
    for blk in blocks {
        let gbb = global_basis(&e, &b, &blk).unwrap();
        assert!(gbb.reports.is_empty(), "block {:?}: {:?}", blk, gbb.reports);
        assert!(gbb.is_complete());
        let bal = check_balanced(&e, &b, &gbb);
        assert!(bal.pass, "balanced failed: {bal:?}");
        // bar-fixedness and crystal classes, explicitly
        for g in &gbb.lower {
            assert_eq!(m.coords(&g.bar()), m.coords(g));
        }
    }
}

#[test]
fn global_basis_and_balanced_uq_rank_two_height_three() {
    let u = UqAlgebra::new(RootDatum::finite_a_path(&[1, 3]).unwrap());
    let e = Engine::new(&u);
    let b = e.build(3);
    assert!(b.reports.is_empty());
    let blocks: BTreeSet<_> = b.graph.nodes.iter().map(|n| n.block.clone()).collect();
    for blk in blocks {
        let gbb = global_basis(&e, &b, &blk).unwrap();
        assert!(gbb.reports.is_empty(), "block {:?}: {:?}", blk, gbb.reports);
        let bal = check_balanced(&e, &b, &gbb);
        assert!(bal.pass, "balanced failed: {bal:?}");
    }
    // The -2a1 - a3 weight: canonical basis elements are the two divided
    // monomials f_1^{(2)} f_3 and f_3 f_1^{(2)}.
    let w = Weight::from_coords([(1, -2), (3, -1)]);
    let gbb = global_basis(&e, &b, &w).unwrap();
    let m1 = u.mul_f_divided(1, 2, &fword(&[3]));
    let m2 = u.mul_f(3, &u.mul_f_divided(1, 2, &u.unit()));
    let lower_set: Vec<_> = gbb.lower.iter().map(|g| u.coords(g)).collect();
    assert!(lower_set.contains(&u.coords(&m1)));
    assert!(lower_set.contains(&u.coords(&m2)));
}

#[test]
fn dim_formula_level_one() {
    let m = v_zero(odd3());
    let e = Engine::new(&m);
    let b = e.build(2);
    // b = vac, empty sequence
    let blk0 = m.block_of(&m.vacuum());
    let gbb0 = global_basis(&e, &b, &blk0).unwrap();
    let vac_id = b.node_of_word[&Vec::new()];
    let one = dim_formula_eval(&e, &gbb0, vac_id, &[]).unwrap();
    assert_eq!(one, symcrys_core::Rat::from_integer(1.into()));
    // level-1 node with sequences (1) and (-1)
    let f1 = m.act_f(1, &m.vacuum());
    let blk1 = m.block_of(&f1);
    let gbb1 = global_basis(&e, &b, &blk1).unwrap();
    let node1 = b.node_of_word[&vec![1]];
    for seq in [[1i64], [-1i64]] {
        let v = dim_formula_eval(&e, &gbb1, node1, &seq).unwrap();
        assert_eq!(v, symcrys_core::Rat::from_integer(1.into()), "seq {seq:?}");
    }
}

#[test]
fn bar_class_examples() {
    let m = v_zero(odd3());
    let e = Engine::new(&m);
    // vac is bar-fixed
    let vac = m.vacuum();
    let b = symcrys_core::crystal::bar_class(&e, &vac).unwrap();
    assert!(m.equal(&b, &vac));
    // q F_1 vac -> q^{-1} F_1 vac
    let f1 = m.act_f(1, &m.vacuum());
    let x = f1.scale(&RatFunc::q_power(1));
    let bx = symcrys_core::crystal::bar_class(&e, &x).unwrap();
    assert!(m.equal(&bx, &f1.scale(&RatFunc::q_power(-1))));
}

/// Enlarging the window does not change anything computed at smaller depth.
#[test]
fn window_consistency_radius_three_vs_five() {
    let depth = 2u32;
    let m3 = v_zero(odd3());
    let m5 = v_zero(RootDatum::odd_window(5).unwrap());
    let e3 = Engine::new(&m3);
    let e5 = Engine::new(&m5);
    let b3 = e3.build(depth);
    let b5 = e5.build(depth);
    // words over the radius-3 indices only
    let words: Vec<&Vec<i64>> = b3.node_of_word.keys().collect();
    for w1 in &words {
        for w2 in &words {
            let same3 = b3.node_of_word[*w1] == b3.node_of_word[*w2];
            let same5 = b5.node_of_word[*w1] == b5.node_of_word[*w2];
            assert_eq!(same3, same5, "words {w1:?} vs {w2:?}");
        }
    }
}

/// For the doubled orbit with the preset dominant weight, level one has two
/// distinct nodes (the Gram matrix [[1, q], [q, 1]] has rank 2).
#[test]
fn doubled_orbit_preset_level_one_branches() {
    let rd = RootDatum::doubled_orbit(None, 2, None).unwrap();
    let lambda = DominantWeight::doubled_orbit_preset(&rd).unwrap();
    let (p0, p0inv) = rd.lambda_support().unwrap();
    let m = VModule::new(rd, lambda);
    let e = Engine::new(&m);
    let b = e.build(1);
    assert!(b.reports.is_empty(), "{:?}", b.reports);
    let node = |w: &[i64]| b.node_of_word[&w.to_vec()];
    assert_ne!(node(&[p0]), node(&[p0inv]));
    // while for lambda = 0 the same datum merges them
    let rd2 = RootDatum::doubled_orbit(None, 2, None).unwrap();
    let m0 = VModule::new(rd2, DominantWeight::zero());
    let e0 = Engine::new(&m0);
    let b0 = e0.build(1);
    assert_eq!(b0.node_of_word[&vec![p0]], b0.node_of_word[&vec![p0inv]]);
}

#[test]
fn psi_crosscheck_all_words_to_length_three() {
    let m = v_zero(odd3());
    let uq = UqAlgebra::new(odd3());
    let indices = m.rd().indices().to_vec();
    let mut words: Vec<Vec<i64>> = vec![Vec::new()];
    for _ in 0..3 {
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
                assert!(
                    m.psi_crosscheck(&uq, &VWord::new(w.clone()), i),
                    "mismatch at word {w:?} color {i}"
                );
            }
        }
        words = next;
    }
}

/// The closed form `(F_i vac, F_j vac) = delta_ij + delta_{theta(j), i}
/// q^{(alpha_j, lambda)}`, exhaustively over both dominant-weight presets.
#[test]
fn v_form_level_one_closed_form() {
    let rd = odd3();
    for lambda in [
        DominantWeight::zero(),
        DominantWeight::new([(1, 1), (-1, 1)], &rd).unwrap(),
    ] {
        let m = VModule::new(rd.clone(), lambda.clone());
        for &i in rd.indices() {
            for &j in rd.indices() {
                let fi = m.act_f(i, &m.vacuum());
                let fj = m.act_f(j, &m.vacuum());
                let mut expect = RatFunc::zero();
                if i == j {
                    expect = expect.add(&RatFunc::one());
                }
                if rd.theta(j) == i {
                    expect = expect.add(&RatFunc::q_power(lambda.alpha_pairing(j)));
                }
                assert_eq!(m.v_form(&fi, &fj), expect, "(F_{i} vac, F_{j} vac)");
            }
        }
    }
}

/// Global bases also exist on the preset-weight module at small depth,
/// where the level-one block already has dimension two.
#[test]
fn global_basis_preset_lambda_depth_two() {
    let rd = odd3();
    let lambda = DominantWeight::new([(1, 1), (-1, 1)], &rd).unwrap();
    let m = VModule::new(rd, lambda);
    let e = Engine::new(&m);
    let b = e.build(2);
    assert!(b.reports.is_empty(), "{:?}", b.reports);
    let blocks: BTreeSet<_> = b.graph.nodes.iter().map(|n| n.block.clone()).collect();
    for blk in blocks {
        let gbb = global_basis(&e, &b, &blk).unwrap();
        assert!(gbb.reports.is_empty(), "block {:?}: {:?}", blk, gbb.reports);
        assert!(gbb.is_complete());
        let bal = check_balanced(&e, &b, &gbb);
        assert!(bal.pass, "{bal:?}");
    }
    // level one branches under the preset weight
    let f1 = m.act_f(1, &m.vacuum());
    assert_eq!(m.block_basis(f1.block()).dim(), 2);
    assert_ne!(b.node_of_word[&vec![1]], b.node_of_word[&vec![-1]]);
}

/// Crystal structure over an even affine cycle (each vertex of degree two):
/// no theorem covers this case, so a clean depth-3 run with global bases on
/// every block is an empirical finding in its own right.
#[test]
fn affine_cycle_crystal_depth_three() {
    let rd = RootDatum::affine_cycle(4).unwrap();
    let m = v_zero(rd.clone());
    let e = Engine::new(&m);
    let b = e.build(3);
    assert!(b.reports.is_empty(), "{:?}", b.reports);
    // level 1 merges theta-paired colors exactly
    for &i in rd.indices() {
        let ti = rd.theta(i);
        assert_eq!(b.node_of_word[&vec![i]], b.node_of_word[&vec![ti]]);
    }
    let stability = e.check_lattice_stability(&b);
    assert!(stability.is_empty(), "{stability:?}");
    let blocks: BTreeSet<_> = b.graph.nodes.iter().map(|n| n.block.clone()).collect();
    for blk in blocks {
        let gbb = global_basis(&e, &b, &blk).unwrap();
        assert!(gbb.reports.is_empty(), "block {:?}: {:?}", blk, gbb.reports);
        assert!(gbb.is_complete());
        assert!(check_balanced(&e, &b, &gbb).pass);
    }
}

/// The memoized block tables behave as atomic get-or-compute maps under
/// concurrent use.
#[test]
fn weight_basis_memo_is_concurrency_safe() {
    let u = UqAlgebra::new(odd3());
    let w = Weight::from_coords([(1, -2), (3, -1)]);
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..4)
            .map(|_| {
                let u = &u;
                let w = w.clone();
                scope.spawn(move || u.weight_basis(&w).dim())
            })
            .collect();
        let dims: Vec<usize> = handles.into_iter().map(|h| h.join().unwrap()).collect();
        assert!(dims.iter().all(|&d| d == dims[0]));
    });
    let m = v_zero(odd3());
    let blk = m.block_of(&m.act_f(1, &m.vacuum()));
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..4)
            .map(|_| {
                let m = &m;
                let blk = blk.clone();
                scope.spawn(move || m.block_basis(&blk).dim())
            })
            .collect();
        let dims: Vec<usize> = handles.into_iter().map(|h| h.join().unwrap()).collect();
        assert!(dims.iter().all(|&d| d == 1));
    });
}

/// The named wrappers produce the same builds as the engine.
#[test]
fn named_graph_wrappers() {
    let u = UqAlgebra::new(RootDatum::finite_a_path(&[1, 3]).unwrap());
    let b = symcrys_core::uqminus::binfty_graph(&u, 2);
    assert_eq!(b.graph.nodes.len(), 7);
    let m = v_zero(odd3());
    let b = symcrys_core::vtheta::crystal_graph(&m, 1);
    assert_eq!(b.graph.nodes.len(), 1 + 2);
    assert!(b.reports.is_empty());
}

/// The rank-two canonical basis at the doubled weight -2a1 - 2a3 is fully
/// known: exactly the three elements with divided powers arranged so the
/// middle exponent dominates. This exercises the solver where the
/// generating words are not all monomial.
#[test]
fn canonical_basis_rank_two_double_weight() {
    let u = UqAlgebra::new(RootDatum::finite_a_path(&[1, 3]).unwrap());
    let e = Engine::new(&u);
    let b = e.build(4);
    assert!(b.reports.is_empty());
    let w = Weight::from_coords([(1, -2), (3, -2)]);
    assert_eq!(u.weight_basis(&w).dim(), 3);
    let gbb = global_basis(&e, &b, &w).unwrap();
    assert!(gbb.reports.is_empty(), "{:?}", gbb.reports);
    assert_eq!(gbb.lower.len(), 3);
    // expected: f1^(2) f3^(2), f1 f3^(2) f1, f3^(2) f1^(2)
    let m1 = u.mul_f_divided(1, 2, &u.mul_f_divided(3, 2, &u.unit()));
    let m2 = u.mul_f(1, &u.mul_f_divided(3, 2, &fword(&[1])));
    let m3 = u.mul_f_divided(3, 2, &u.mul_f_divided(1, 2, &u.unit()));
    let got: BTreeSet<Vec<String>> = gbb
        .lower
        .iter()
        .map(|g| u.coords(g).iter().map(|c| c.to_string()).collect())
        .collect();
    for (name, m) in [
        ("f1(2)f3(2)", &m1),
        ("f1 f3(2) f1", &m2),
        ("f3(2)f1(2)", &m3),
    ] {
        let coords: Vec<String> = u.coords(m).iter().map(|c| c.to_string()).collect();
        assert!(got.contains(&coords), "missing canonical element {name}");
    }
    let bal = check_balanced(&e, &b, &gbb);
    assert!(bal.pass, "{bal:?}");
}

/// Global basis on the depth-4 diamond block of the module at lambda = 0:
/// three nodes, solver succeeds, balanced conditions hold.
#[test]
fn global_basis_on_the_diamond_block() {
    let m = v_zero(odd3());
    let e = Engine::new(&m);
    let b = e.build(4);
    assert!(b.reports.is_empty());
    let f1 = m.act_f(1, &m.vacuum());
    let level4 = m.act_f(1, &m.act_f(1, &m.act_f(1, &f1)));
    let blk = m.block_of(&level4);
    assert_eq!(m.block_basis(&blk).dim(), 3);
    let gbb = global_basis(&e, &b, &blk).unwrap();
    assert!(gbb.reports.is_empty(), "{:?}", gbb.reports);
    assert_eq!(gbb.lower.len(), 3);
    let bal = check_balanced(&e, &b, &gbb);
    assert!(bal.pass, "{bal:?}");
}

/// The umbrella orbit constructor reproduces its named special cases.
#[test]
fn multiplicative_orbit_constructor() {
    use symcrys_core::rootdata::OrbitKind;
    let a = RootDatum::from_multiplicative_orbit(OrbitKind::ZOrbitOddPowers, None, 3).unwrap();
    assert_eq!(a, RootDatum::odd_window(3).unwrap());
    let b = RootDatum::from_multiplicative_orbit(OrbitKind::ZOrbitOddPowers, Some(4), 0).unwrap();
    assert_eq!(b, RootDatum::affine_cycle(4).unwrap());
    let c = RootDatum::from_multiplicative_orbit(
        OrbitKind::DoubledOrbit { relation: Some(4) },
        None,
        2,
    );
    assert!(c.is_err(), "p0^2 = p1^4 must be rejected");
}

/// The convenience operators agree with the engine.
#[test]
fn convenience_tilde_operators() {
    let u = UqAlgebra::new(odd3());
    let f1 = u.f_tilde(1, &u.unit()).unwrap();
    assert_eq!(f1, fword(&[1]));
    assert_eq!(u.e_tilde(1, &f1).unwrap(), u.unit());
    let m = v_zero(odd3());
    let x = m.f_tilde(1, &m.vacuum()).unwrap();
    assert!(m.equal(&x, &m.act_f(1, &m.vacuum())));
    assert!(m.equal(&m.e_tilde(1, &x).unwrap(), &m.vacuum()));
}

/// Dimension values over the doubled orbit with the preset dominant weight:
/// the level-one duality grid is exactly the identity.
#[test]
fn dim_formula_doubled_orbit_preset() {
    let rd = RootDatum::doubled_orbit(None, 2, None).unwrap();
    let lambda = DominantWeight::doubled_orbit_preset(&rd).unwrap();
    let (p0, p0inv) = rd.lambda_support().unwrap();
    let m = VModule::new(rd, lambda);
    let e = Engine::new(&m);
    let b = e.build(2);
    assert!(b.reports.is_empty(), "{:?}", b.reports);
    let blocks: BTreeSet<_> = b.graph.nodes.iter().map(|n| n.block.clone()).collect();
    for blk in &blocks {
        let gbb = global_basis(&e, &b, blk).unwrap();
        assert!(gbb.reports.is_empty(), "block {:?}: {:?}", blk, gbb.reports);
        assert!(gbb.is_complete());
        assert!(check_balanced(&e, &b, &gbb).pass);
    }
    // level-one nodes of the two supporting colors
    let f_p0 = m.act_f(p0, &m.vacuum());
    let blk = m.block_of(&f_p0);
    let gbb = global_basis(&e, &b, &blk).unwrap();
    let n_p0 = b.node_of_word[&vec![p0]];
    let n_inv = b.node_of_word[&vec![p0inv]];
    let one = symcrys_core::Rat::from_integer(1.into());
    let zero = symcrys_core::Rat::from_integer(0.into());
    assert_eq!(dim_formula_eval(&e, &gbb, n_p0, &[p0]).unwrap(), one);
    assert_eq!(dim_formula_eval(&e, &gbb, n_inv, &[p0inv]).unwrap(), one);
    assert_eq!(dim_formula_eval(&e, &gbb, n_p0, &[p0inv]).unwrap(), zero);
    assert_eq!(dim_formula_eval(&e, &gbb, n_inv, &[p0]).unwrap(), zero);
}

/// Node counts equal Gram-rank dimensions across the whole radius-3 window
/// at depth 3 (not just the rank-2 sub-window).
#[test]
fn binfty_counts_full_window_depth_three() {
    let u = UqAlgebra::new(odd3());
    let e = Engine::new(&u);
    let b = e.build(3);
    assert!(b.reports.is_empty());
    let mut counts: BTreeMap<Weight, usize> = BTreeMap::new();
    for n in &b.graph.nodes {
        *counts.entry(n.block.clone()).or_default() += 1;
    }
    for (w, count) in counts {
        assert_eq!(count, u.weight_basis(&w).dim(), "weight {w}");
    }
}

/// Independent realization check at lambda = 0: each module block must have
/// the dimension of the algebra quotient by the left ideal generated by the
/// differences f_i - f_theta(i). The quotient dimension is computed from
/// scratch in the algebra (weight spaces plus an explicit ideal span),
/// never through the module's own form.
#[test]
fn vtheta_zero_matches_left_ideal_quotient() {
    let rd = odd3();
    let u = UqAlgebra::new(rd.clone());
    let m = v_zero(rd.clone());
    let indices = rd.indices().to_vec();
    // All letter words up to length 3, grouped by (length, symmetrized weight).
    let mut by_block: BTreeMap<(usize, Weight), Vec<Vec<i64>>> = BTreeMap::new();
    let mut words: Vec<Vec<i64>> = vec![Vec::new()];
    for len in 1..=3usize {
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
        for w in &words {
            let beta = Weight::from_coords(w.iter().map(|&i| (i, 1)));
            let sym = rd.symmetrize(&beta).0;
            by_block.entry((len, sym)).or_default().push(w.clone());
        }
    }
    for ((len, sym), block_words) in by_block {
        // Ambient space: direct sum of the algebra weight spaces whose
        // negatives symmetrize to `sym`.
        let mut weights: Vec<Weight> = Vec::new();
        for w in &block_words {
            let wt = Word::new(w.clone()).weight();
            if !weights.contains(&wt) {
                weights.push(wt);
            }
        }
        weights.sort();
        let offsets: BTreeMap<Weight, usize> = {
            let mut acc = 0;
            let mut map = BTreeMap::new();
            for wt in &weights {
                map.insert(wt.clone(), acc);
                acc += u.weight_basis(wt).dim();
            }
            map
        };
        let total: usize = weights.iter().map(|wt| u.weight_basis(wt).dim()).sum();
        let embed = |a: &FreeElement| -> Vec<RatFunc> {
            let mut v = vec![RatFunc::zero(); total];
            let off = offsets[a.weight()];
            for (k, c) in u.coords(a).into_iter().enumerate() {
                v[off + k] = c;
            }
            v
        };
        // Left ideal span: x (f_i - f_theta(i)) over all shorter words x
        // with the right symmetrized weight, all colors i.
        let mut ideal_rows: Vec<Vec<RatFunc>> = Vec::new();
        let mut prefixes: Vec<Vec<i64>> = vec![Vec::new()];
        for _ in 1..len {
            prefixes = prefixes
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
        if len == 1 {
            prefixes = vec![Vec::new()];
        }
        for x in &prefixes {
            for &i in &indices {
                let mut letters = x.clone();
                letters.push(i);
                let beta = Weight::from_coords(letters.iter().map(|&k| (k, 1)));
                if rd.symmetrize(&beta).0 != sym {
                    continue;
                }
                let xi = FreeElement::single(Word::new(letters), RatFunc::one());
                let mut letters_t = x.clone();
                letters_t.push(rd.theta(i));
                let xti = FreeElement::single(Word::new(letters_t), RatFunc::one());
                let mut row = embed(&xi);
                for (slot, other) in row.iter_mut().zip(embed(&xti)) {
                    *slot = slot.sub(&other);
                }
                ideal_rows.push(row);
            }
        }
        let ideal_rank = if ideal_rows.is_empty() {
            0
        } else {
            symcrys_core::scalars::rank(&ideal_rows)
        };
        let quotient_dim = total - ideal_rank;
        let vblock = m.block_of(&m.single(
            VWord::new(block_words[0].clone()),
            RatFunc::one(),
        ));
        assert_eq!(
            m.block_basis(&vblock).dim(),
            quotient_dim,
            "block (len {len}, sym {sym}) dimension mismatch"
        );
    }
}
