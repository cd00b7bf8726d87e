//! Independent routes to the same numbers must agree.

mod common;

use common::*;
use holonomy_core::builtins::builtin;
use holonomy_core::holonomy::maps::Localizations;
use holonomy_core::holonomy::{ideal_quotients, inclusion_map, projection_map};
use holonomy_core::oracle::{holonomy_dims_from_hilbert, quadratic_algebra_dims};
use holonomy_core::{Arrangement, Exec, Holonomy, Options};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_arrangements(count: usize, seed: u64, max: usize) -> Vec<Arrangement> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        if let Ok(a) = Arrangement::from_normals(&random_normals(&mut rng, 3, max)) {
            out.push(a);
        }
    }
    out
}

#[test]
fn presentation_route_matches_free_lie_ideal() {
    let mut cases: Vec<Arrangement> = ["x3", "braid4", "pencil4", "braid3"]
        .iter()
        .map(|n| builtin(n).unwrap())
        .collect();
    cases.extend(random_arrangements(8, 21, 6));
    for a in &cases {
        let r_max = if a.b1() <= 5 { 6 } else { 5 };
        let h = Holonomy::compute(a, &Options::degree(r_max)).unwrap();
        let j = ideal_quotients(a, r_max, 1 << 22, Exec::default()).unwrap();
        for q in &j {
            assert_eq!(q.rank_q, h.rank_q(q.degree).unwrap(), "{:?} degree {}", a.label, q.degree);
            assert_eq!(q.torsion, h.torsion(q.degree).unwrap());
        }
    }
}

#[test]
fn oracle_matches_on_random_arrangements() {
    for a in random_arrangements(12, 5, 6) {
        let h = Holonomy::compute(&a, &Options::degree(4)).unwrap();
        let ext = holonomy_dims_from_hilbert(&quadratic_algebra_dims(&a, 4, 1 << 20).unwrap()).unwrap();
        let ours: Vec<u128> = h.ranks_q().into_iter().map(|x| x as u128).collect();
        assert_eq!(ext, ours, "{:?}", a.flats);
    }
}

#[test]
fn oracle_reports_witt_ranks_for_pencils() {
    for m in 2..=5usize {
        let a = Arrangement::from_flats(m, &[(0..m).collect()]).unwrap();
        let ext = holonomy_dims_from_hilbert(&quadratic_algebra_dims(&a, 4, 1 << 20).unwrap()).unwrap();
        let free = necklace_ranks(m as u128 - 1, 4);
        assert_eq!(ext[0], m as u128);
        assert_eq!(&ext[1..], &free[2..]);
    }
}

/// The projection to a sub-arrangement meeting a flat in at most one
/// hyperplane kills the image of that flat's localization in degrees >= 2.
#[test]
fn projection_kills_flats_it_barely_meets() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for name in ["x2", "x3", "braid4", "wheel"] {
        let a = builtin(name).unwrap();
        let opts = Options::degree(4);
        let h = Holonomy::compute(&a, &opts).unwrap();
        let locs = Localizations::new(&a, &opts).unwrap();
        let mut subsets: Vec<Vec<usize>> = a.flats.iter().map(|f| f.members.clone()).collect();
        for _ in 0..10 {
            subsets.push((0..a.b1()).filter(|_| rng.gen_bool(0.5)).collect());
        }
        for b in subsets.iter().filter(|b| !b.is_empty()) {
            let hb = Holonomy::compute(&a.restrict(b).unwrap(), &opts).unwrap();
            let pi = projection_map(&h, &hb, b).unwrap();
            for x in a.multi_flats() {
                if x.members.iter().filter(|m| b.contains(m)).count() > 1 {
                    continue;
                }
                let iota = inclusion_map(locs.get(x.members.len()).unwrap(), &h, &x.members).unwrap();
                let comp = iota.then(&pi).unwrap();
                for r in 2..=4 {
                    assert!(comp.is_zero(r).unwrap(), "{name}: B = {b:?}, X = {:?}, degree {r}", x.members);
                }
            }
        }
    }
}

#[test]
fn sequential_and_parallel_agree() {
    for name in ["braid5", "x2", "gfam-2"] {
        let a = builtin(name).unwrap();
        let seq = Holonomy::compute(&a, &Options { exec: Exec::Sequential, ..Options::degree(5) }).unwrap();
        let par = Holonomy::compute(&a, &Options { exec: Exec::Parallel, ..Options::degree(5) }).unwrap();
        for r in 1..=5 {
            assert_eq!(seq.piece(r).unwrap().orders, par.piece(r).unwrap().orders);
            assert_eq!(seq.piece(r).unwrap().defs, par.piece(r).unwrap().defs);
        }
        for s in 1..=3 {
            for t in 1..=5 - s {
                assert_eq!(seq.bracket_table(s, t).unwrap(), par.bracket_table(s, t).unwrap());
            }
        }
    }
}

#[test]
fn graph_builtins_have_no_torsion_up_to_degree_five() {
    for name in ["braid4", "braid5"] {
        let h = Holonomy::compute(&builtin(name).unwrap(), &Options::degree(5)).unwrap();
        for r in 1..=5 {
            assert!(h.torsion(r).unwrap().is_empty(), "{name} degree {r}");
        }
    }
}
