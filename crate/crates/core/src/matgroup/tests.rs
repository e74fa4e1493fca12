use super::*;
use crate::arith::{rat, rat_i, CycloNum};
use crate::poly::Ring;
use eigen::normalize_semisimple;

type RMat = Mat<Rat>;

fn m2(rows: &[Vec<i64>]) -> RMat {
    Mat::from_i64_rows(rows)
}

#[test]
fn minpoly_examples() {
    // identity -> x - 1
    let p = minpoly(&RMat::identity(3));
    assert_eq!(p.coeffs(), &[rat_i(-1), rat_i(1)]);
    // diag(2,4) -> (x-2)(x-4) = x^2 - 6x + 8
    let p = minpoly(&RMat::diagonal(vec![rat_i(2), rat_i(4)]));
    assert_eq!(p.coeffs(), &[rat_i(8), rat_i(-6), rat_i(1)]);
    // [[6,2],[-4,0]] has the same minimal polynomial (eigenvalues 2 and 4)
    let p = minpoly(&m2(&[vec![6, 2], vec![-4, 0]]));
    assert_eq!(p.coeffs(), &[rat_i(8), rat_i(-6), rat_i(1)]);
}

#[test]
fn semisimple_unipotent_classification() {
    let id = RMat::identity(2);
    assert!(is_semisimple(&id) && is_unipotent(&id));
    let shear = m2(&[vec![1, 1], vec![0, 1]]);
    assert!(!is_semisimple(&shear) && is_unipotent(&shear));
    let m = m2(&[vec![6, 2], vec![-4, 0]]);
    assert!(is_semisimple(&m) && !is_unipotent(&m));
}

#[test]
fn jordan_chevalley_examples() {
    // semisimple input: (M, Id)
    let m = m2(&[vec![6, 2], vec![-4, 0]]);
    let (s, u) = jordan_chevalley(&m).unwrap();
    assert_eq!(s, m);
    assert!(u.is_identity());
    // unipotent input: (Id, U)
    let shear = m2(&[vec![1, 5], vec![0, 1]]);
    let (s, u) = jordan_chevalley(&shear).unwrap();
    assert!(s.is_identity());
    assert_eq!(u, shear);
    // the 4x4 loop matrix: semisimple part has eigenvalues {25,5,5,5}
    let m = Mat::from_rows(vec![
        vec![rat_i(25), rat_i(0), rat_i(-1), rat_i(20)],
        vec![rat_i(0), rat_i(5), rat_i(0), rat_i(0)],
        vec![rat_i(0), rat(-1, 2), rat_i(5), rat_i(0)],
        vec![rat_i(0), rat_i(0), rat_i(1), rat_i(5)],
    ]);
    let (s, u) = jordan_chevalley(&m).unwrap();
    assert_eq!(s.mul(&u), m);
    assert_eq!(s.mul(&u), u.mul(&s));
    assert!(is_semisimple(&s));
    assert!(is_unipotent(&u));
    let mut eigs = eigenvalues(&s, 1).unwrap();
    eigs.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    assert_eq!(eigs, vec![rat_i(5), rat_i(5), rat_i(5), rat_i(25)]);
    // singular input
    assert_eq!(
        jordan_chevalley(&m2(&[vec![0, 0], vec![0, 0]])),
        Err(MatError::Singular)
    );
}

#[test]
fn log_exp_examples() {
    assert!(nil_log(&RMat::identity(3)).unwrap().is_zero());
    assert!(nil_exp(&RMat::zeros(3, 3)).unwrap().is_identity());
    // ladder with parameter lambda = 7: two-term series, corner -l^2/2
    let l = 7i64;
    let u = m2(&[vec![1, l, 0], vec![0, 1, l], vec![0, 0, 1]]);
    let log = nil_log(&u).unwrap();
    let expect = Mat::from_rows(vec![
        vec![rat_i(0), rat_i(l), rat(-l * l, 2)],
        vec![rat_i(0), rat_i(0), rat_i(l)],
        vec![rat_i(0), rat_i(0), rat_i(0)],
    ]);
    assert_eq!(log, expect);
    // exp of a single super-diagonal: [[1,l,l^2/2],[0,1,l],[0,0,1]]
    let n = Mat::from_rows(vec![
        vec![rat_i(0), rat_i(l), rat_i(0)],
        vec![rat_i(0), rat_i(0), rat_i(l)],
        vec![rat_i(0), rat_i(0), rat_i(0)],
    ]);
    let e = nil_exp(&n).unwrap();
    let expect = Mat::from_rows(vec![
        vec![rat_i(1), rat_i(l), rat(l * l, 2)],
        vec![rat_i(0), rat_i(1), rat_i(l)],
        vec![rat_i(0), rat_i(0), rat_i(1)],
    ]);
    assert_eq!(e, expect);
    // one-parameter law exp(sN) exp(tN) = exp((s+t)N) at scalar instances
    for (s, t) in [(1i64, 2i64), (3, -1), (-2, -2)] {
        let es = nil_exp(&n.scale(&rat_i(s))).unwrap();
        let et = nil_exp(&n.scale(&rat_i(t))).unwrap();
        let est = nil_exp(&n.scale(&rat_i(s + t))).unwrap();
        assert_eq!(es.mul(&et), est);
    }
    assert_eq!(nil_log(&m2(&[vec![2, 0], vec![0, 1]])), Err(MatError::NotUnipotent));
    assert_eq!(nil_exp(&m2(&[vec![1, 0], vec![0, 0]])), Err(MatError::NotNilpotent));
}

#[test]
fn log_exp_round_trip_randomized() {
    let mut state = 0x12345u64;
    let mut rnd = move || {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        ((state >> 33) % 9) as i64 - 4
    };
    for _ in 0..200 {
        let d = 2 + (rnd().unsigned_abs() as usize % 4); // 2..=5
        let mut n = RMat::zeros(d, d);
        for i in 0..d {
            for j in i + 1..d {
                n[(i, j)] = rat(rnd(), 1 + rnd().unsigned_abs() as i64);
            }
        }
        let u = nil_exp(&n).unwrap();
        assert!(is_unipotent(&u));
        assert_eq!(nil_log(&u).unwrap(), n, "log(exp(N)) != N");
        let u2 = nil_exp(&nil_log(&u).unwrap()).unwrap();
        assert_eq!(u2, u, "exp(log(U)) != U");
    }
}

#[test]
fn one_param_subgroup() {
    // U with both superdiagonal slots = lambda, embedded 4x4 with a fixed slot
    let lam = rat(-1, 5);
    let u = Mat::from_rows(vec![
        vec![rat_i(1), lam.clone(), rat_i(0), rat_i(0)],
        vec![rat_i(0), rat_i(1), lam.clone(), rat_i(0)],
        vec![rat_i(0), rat_i(0), rat_i(1), rat_i(0)],
        vec![rat_i(0), rat_i(0), rat_i(0), rat_i(1)],
    ]);
    let ring = Ring::new(vec!["t"]);
    let m = unipotent_one_param(&u, &ring, 0).unwrap();
    // entry (0,2) must be t(t-1)/2 * lambda^2
    let t = crate::poly::Poly::<Rat>::var(&ring, 0);
    let expect = t
        .mul(&t.sub(&crate::poly::Poly::one(&ring)))
        .scale(&(lam.clone() * &lam * rat(1, 2)));
    assert_eq!(m[0][2], expect);
    // at t = 0: identity; at t = 1: U; at t = 2: U^2
    for (tv, want) in [(0i64, RMat::identity(4)), (1, u.clone()), (2, u.mul(&u)), (5, u.pow_i(5).unwrap()), (-3, u.pow_i(-3).unwrap())] {
        let spec = Mat::from_rows(
            m.iter()
                .map(|row| row.iter().map(|p| p.eval(&[rat_i(tv)])).collect())
                .collect(),
        );
        assert_eq!(spec, want, "specialization at t={tv}");
    }
    // identity stays identity for all t
    let idp = unipotent_one_param(&RMat::identity(3), &ring, 0).unwrap();
    for (i, row) in idp.iter().enumerate() {
        for (j, p) in row.iter().enumerate() {
            if i == j {
                assert_eq!(*p, crate::poly::Poly::one(&ring));
            } else {
                assert!(p.is_zero());
            }
        }
    }
}

#[test]
fn eigenvalues_rational_and_cyclotomic() {
    let m = m2(&[vec![6, 2], vec![-4, 0]]);
    assert_eq!(eigenvalues(&m, 1).unwrap(), vec![rat_i(2), rat_i(4)]);
    // rotation-by-2i block: eigenvalues +-2 zeta_4, not rational
    let rot = m2(&[vec![0, -2], vec![2, 0]]);
    assert_eq!(eigenvalues(&rot, 1), Err(MatError::EigenvalueFieldTooLarge));
    let rot_c: Mat<CycloNum> = rot.map(|r| CycloNum::from_rational(r.to_rat().unwrap()));
    let eigs = eigenvalues(&rot_c, 4).unwrap();
    let two_i = CycloNum::from_rational(rat_i(2))
        .checked_mul(&CycloNum::zeta(4))
        .unwrap();
    assert_eq!(eigs.len(), 2);
    assert!(eigs.contains(&two_i));
    assert!(eigs.contains(&Coeff::neg(&two_i)));
}

#[test]
fn normalize_semisimple_worked_example() {
    // M = [[0,-2],[4,6]], v = (0,1): D = diag(2,4), P v = T 1 with T = Id
    let m = m2(&[vec![0, -2], vec![4, 6]]);
    let v = vec![rat_i(0), rat_i(1)];
    let norm = normalize_semisimple(&[m.clone()], &v, 1).unwrap();
    assert_eq!(norm.d_list[0], RMat::diagonal(vec![rat_i(2), rat_i(4)]));
    assert_eq!(norm.selector.selected(), &[0, 1]);
    assert_eq!(norm.p_inv.mul(&norm.d_list[0]).mul(&norm.p), m);
    assert_eq!(norm.p.mul_vec(&v), vec![rat_i(1), rat_i(1)]);
    // the published change of basis satisfies the same equations
    let p_pub = m2(&[vec![1, -1], vec![-1, 2]]);
    assert_eq!(p_pub.mul_vec(&v), vec![rat_i(-1), rat_i(2)]);
    let rescale = RMat::diagonal(vec![rat_i(-1), rat(1, 2)]);
    let p_scaled = rescale.mul(&p_pub);
    assert_eq!(p_scaled.mul_vec(&v), vec![rat_i(1), rat_i(1)]);

    // diagonal family with an everywhere-nonzero point: P is a rescaling
    let d1 = RMat::diagonal(vec![rat_i(3), rat_i(5)]);
    let v = vec![rat_i(2), rat(1, 2)];
    let norm = normalize_semisimple(&[d1.clone()], &v, 1).unwrap();
    assert!(norm.p.is_diagonal());
    assert_eq!(norm.selector.k(), 2);
    assert_eq!(norm.p.mul_vec(&v), vec![rat_i(1), rat_i(1)]);

    // zero vector: empty selector
    let norm = normalize_semisimple(&[d1], &[rat_i(0), rat_i(0)], 1).unwrap();
    assert_eq!(norm.selector.k(), 0);

    // commuting pair from the 3-dimensional coset example
    let a = RMat::diagonal(vec![rat_i(2), rat_i(-2), rat_i(2)]);
    let b = RMat::diagonal(vec![rat_i(-2), rat_i(2), rat_i(2)]);
    let v = vec![rat_i(1), rat_i(1), rat_i(1)];
    let norm = normalize_semisimple(&[a.clone(), b.clone()], &v, 1).unwrap();
    assert_eq!(norm.p_inv.mul(&norm.d_list[0]).mul(&norm.p), a);
    assert_eq!(norm.p_inv.mul(&norm.d_list[1]).mul(&norm.p), b);
    // non-diagonalizable input errors
    let shear = m2(&[vec![1, 1], vec![0, 1]]);
    assert!(matches!(
        normalize_semisimple(&[shear], &[rat_i(1), rat_i(0)], 1),
        Err(MatError::NotSimultaneouslyDiagonalizable) | Err(MatError::EigenvalueFieldTooLarge)
    ));
}

#[test]
fn jordan_chevalley_randomized() {
    let mut state = 0x7777u64;
    let mut rnd = move || {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        ((state >> 33) % 7) as i64 - 3
    };
    let mut done = 0;
    while done < 200 {
        let d = 2 + (rnd().unsigned_abs() as usize % 3);
        let mut m = RMat::zeros(d, d);
        for i in 0..d {
            for j in 0..d {
                m[(i, j)] = rat_i(rnd());
            }
        }
        if m.det().is_zero() {
            continue;
        }
        match jordan_chevalley(&m) {
            Ok((s, u)) => {
                assert_eq!(s.mul(&u), m);
                assert_eq!(s.mul(&u), u.mul(&s));
                assert!(is_semisimple(&s));
                assert!(is_unipotent(&u));
                done += 1;
            }
            Err(MatError::EigenvalueFieldTooLarge) => {
                // Newton denominators can leave the field only when the
                // squarefree part has repeated behavior; skip such draws
                continue;
            }
            Err(e) => panic!("unexpected error {e:?}"),
        }
    }
}

#[test]
fn selector_matrix_identities() {
    let t = SelectorMatrix::new(4, vec![2, 3]);
    let tm: RMat = t.to_mat();
    assert_eq!(tm.transpose().mul(&tm), RMat::identity(2));
    assert_eq!(
        t.times_ones::<Rat>(),
        vec![rat_i(0), rat_i(0), rat_i(1), rat_i(1)]
    );
}
