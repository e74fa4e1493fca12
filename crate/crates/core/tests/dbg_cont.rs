#[test]
fn dbg_cont_44() {
    use orbitdet_core::detproc::*;
    use orbitdet_core::poly::*;
    use orbitdet_core::arith::Rat;
    use orbitdet_core::lattice::Lattice;
    use orbitdet_core::matgroup::SelectorMatrix;
    let ring = Ring::new(vec!["x", "y"]);
    let gens: Vec<Poly<Rat>> = vec![parse_poly("4*x^2 + y^2 + 4*x*y - x - y", &ring).unwrap()];
    let selector = SelectorMatrix::new(2, vec![0, 1]);
    let lat = Lattice::from_i64_rows(2, &[vec![2, -1]]);
    let tset = vec![UnipotentTemplate::identity(2)];
    let budget = Budget::default();
    let (cond, _, _, _) = orbit_condition_ideal(&gens, &selector, &lat, &tset, 0, &budget, false).unwrap();
    let gb = cond.groebner(&MonomialOrder::GrevLex, &budget).unwrap();
    eprintln!("J_P reduced basis:");
    for p in gb.iter() { eprintln!("  {}", p); }
}
