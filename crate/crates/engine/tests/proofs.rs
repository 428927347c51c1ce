use sodcalc_core::adjunction::AdjunctionOracle;
use sodcalc_core::block::grid;
use sodcalc_core::{sod_equiv, Block, Params, Sod};
use sodcalc_engine::driver::{enumerate_cover_sods_with, relabel_word};
use sodcalc_engine::{crosscheck, replay_main, verify_ck, verify_phi_relabel, Session, WindowOracle};

fn params(n: i64, d: i64, m: i64) -> Params {
    Params::new(n, d, m).unwrap()
}

#[test]
fn crosscheck_pair_count_matches_block_census() {
    // Per twist: n BX, n JZ, n AZ and one AXE; plus n FY and n DZ overall.
    for (n, d, m) in [(2, 1, 4), (3, 1, 5), (2, 2, 7)] {
        let blocks = (3 * n + 1) * (3 * m + 1) + 2 * n;
        let rep = crosscheck(&params(n, d, m), -m..=2 * m);
        assert!(rep.is_clean(), "{:?}", rep.mismatches.first());
        assert_eq!(rep.pairs as i64, blocks * blocks);
    }
}

#[test]
fn final_tail_is_the_grid_under_the_adjunction_oracle() {
    for (n, d, m) in [(2, 2, 4), (3, 1, 5), (4, 1, 7), (3, 2, 8)] {
        let p = params(n, d, m);
        let r = replay_main(&p).unwrap();
        let phis = r.phi_blocks().len();
        assert_eq!(phis as i64, n - 1);
        let tail = Sod::new(p, r.final_sod.blocks()[phis..].to_vec()).unwrap();
        let target = Sod::new(p, grid(&p, 0..=p.big_m() - 1, 0..=n - 1)).unwrap();
        assert!(sod_equiv(&tail, &target, &AdjunctionOracle::new(p)).unwrap().is_some());
        tail.certify(&AdjunctionOracle::new(p)).unwrap();
    }
}

#[test]
fn rotated_decompositions_certify_with_both_oracles() {
    let p = params(4, 1, 6);
    let window = enumerate_cover_sods_with(&p, &WindowOracle::new(p)).unwrap();
    let adjunction = enumerate_cover_sods_with(&p, &AdjunctionOracle::new(p)).unwrap();
    assert_eq!(window, adjunction);
    assert_eq!(window.len(), 4);
    assert_eq!(window[1].to_string(), "⟨DZ(2), DZ(3), FY(0), DZ(0)⟩");
}

#[test]
fn ck_induction_counts() {
    // C_k from the raw list: k columns of M − d JZ blocks each, every one
    // ending in exactly one transform.
    let p = params(3, 1, 6);
    for k in 0..3 {
        let rep = verify_ck(&p, k).unwrap();
        assert_eq!(rep.transforms as i64, k * (p.big_m() - p.d()));
        assert!(!rep.trivial);
    }
    let boundary = params(3, 2, 6);
    for k in 0..3 {
        let rep = verify_ck(&boundary, k).unwrap();
        assert!(rep.trivial && rep.steps.is_empty());
    }
}

#[test]
fn relabeling_normal_forms() {
    let p = params(4, 1, 6);
    let r = replay_main(&p).unwrap();
    let entries = verify_phi_relabel(&p, r.phi_blocks()).unwrap();
    assert_eq!(entries.iter().map(|e| e.applications).collect::<Vec<_>>(), [3, 3]);
    let Block::Phi(phi0) = &r.phi_blocks()[0] else { panic!() };
    let (word, n) = relabel_word(4, &phi0.word, &p);
    assert_eq!(n, 1);
    assert_eq!(word.normalized(), phi0.word.normalized());
}

#[test]
fn session_traces_the_spec_step_one_example() {
    let p = params(2, 2, 4);
    let start = Sod::new(p, vec![Block::fy(p.weight(0)), Block::dz(p.weight(0))]).unwrap();
    let mut s = Session::new(start);
    s.expand(0).unwrap();
    let i = s.position(&Block::bx(3, p.weight(0))).unwrap();
    s.right_mutate(i).unwrap();
    let i = s.position(&Block::bx(2, p.weight(0))).unwrap();
    s.right_mutate(i).unwrap();
    assert_eq!(s.sod().to_string(), "⟨BX(0,0), BX(1,0), DZ(0), BX(0,1), BX(1,1)⟩");
    let conds: Vec<_> = s.trace().steps[1].conds.iter().map(|c| (c.p.to_string(), c.q.to_string())).collect();
    assert_eq!(conds, [("BX(1,1)".to_string(), "DZ(0)".to_string())]);
}
