use orbitdet_core::arith::{CycloNum, Rat, Coeff};
use orbitdet_core::detproc::*;
use orbitdet_core::lattice::Lattice;
use orbitdet_core::matgroup::SelectorMatrix;
use orbitdet_core::poly::*;

#[test]
fn dbg_14_candidate() {
    let ring = Ring::new(vec!["x1", "x2", "x3"]);
    let gens: Vec<Poly<Rat>> = ["x1^2 - x3^2", "x2^2 - x3^2"]
        .iter().map(|s| parse_poly(s, &ring).unwrap()).collect();
    let selector = SelectorMatrix::new(3, vec![0, 1, 2]);
    let lat = Lattice::from_i64_rows(3, &[vec![1, 1, -2], vec![2, -2, 0]]);
    eprintln!("lattice HNF: {:?}, divisors {:?}", lat.basis_rows(), lat.elementary_divisors());
    let tset = vec![UnipotentTemplate::identity(3)];
    let budget = Budget::new(2_000_000);
    let t0 = std::time::Instant::now();
    let (cond, _, _, _) = orbit_condition_ideal(&gens, &selector, &lat, &tset, 0, &budget, false).unwrap();
    eprintln!("conditions computed in {:?}; {} gens", t0.elapsed(), cond.gens().len());
    let gb = cond.groebner(&MonomialOrder::Lex, &budget).unwrap();
    eprintln!("lex GB ({} elements):", gb.len());
    for p in gb.iter() { eprintln!("  {}", p.to_string_ord(&MonomialOrder::Lex)); }
    // try the point search over Q(zeta_4)
    let cond_c: Ideal<CycloNum> = Ideal::new(cond.ring().clone(),
        cond.gens().iter().map(|g| g.map_coeffs(|c| CycloNum::from_rational(c.clone()))).collect());
    let det: Poly<CycloNum> = parse_poly(
        "p11*p22*p33 - p11*p23*p32 - p12*p21*p33 + p12*p23*p31 + p13*p21*p32 - p13*p22*p31",
        cond.ring()).unwrap();
    let mut search = PointSearch::defaults(4, 500_000);
    search.nonzero = Some(&det);
    let t0 = std::time::Instant::now();
    let pt = rational_point(&cond_c, &search, &budget).unwrap();
    eprintln!("point search took {:?}: {:?}", t0.elapsed(), pt.map(|p| p.iter().map(|e| e.to_string()).collect::<Vec<_>>()));
}
