use sdw_core::module::{mu, PresentedModule};
use sdw_core::semidual::{build_example, is_semidualizing};
use sdw_core::serre::{check_g_condition, ring_invariants, GVerdict};

#[test]
fn example_three_smoke() {
    let t0 = std::time::Instant::now();
    let ex = build_example(3, 2).unwrap();
    println!("build: {:?}", t0.elapsed());
    let s_inv = ring_invariants(&ex.s).clone();
    let r_inv = ring_invariants(&ex.r).clone();
    println!("dim S = {}, dim R = {} ({:?})", s_inv.dim, r_inv.dim, t0.elapsed());
    assert_eq!(s_inv.dim, 5);
    assert_eq!(r_inv.dim, 3);
    println!("mu(C) = {} ({:?})", mu(&ex.c), t0.elapsed());
    let cert = is_semidualizing(&ex.c, 5);
    println!("semidualizing B=5: {} ({:?})", cert.certified, t0.elapsed());
    assert!(cert.certified);
    let rm = PresentedModule::ring_module(ex.r.clone());
    let g_r = check_g_condition(&rm, &ex.omega, 0);
    println!("G_0^R = {:?} ({:?})", g_r, t0.elapsed());
    assert!(matches!(g_r, GVerdict::False { .. }));
    let g_c2 = check_g_condition(&ex.c, &ex.omega, 2);
    println!("G_2^C = {:?} ({:?})", g_c2, t0.elapsed());
    assert_eq!(g_c2, GVerdict::True);
}
