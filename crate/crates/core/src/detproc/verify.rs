//! Independent re-verification of certificates: exact structural
//! identities, orbit/group sampling up to a power bound, and closure
//! reconstruction compared against the input ideal. Every YES verdict in
//! the pipeline must pass this before it is reported.

use super::certificate::{Certificate, VerifyReport};
use super::closure::{group_closure_ideal, lattice_ideal, orbit_closure_ideal};
use super::DetError;
use crate::arith::{Coeff, CycloNum};
use crate::lattice::relation_lattice_of_tuples;
use crate::matgroup::{is_unipotent, jordan_chevalley, Mat};
use crate::poly::{Budget, Ideal, MonomialOrder, Poly};

/// Runs every check; failures are report entries, not errors.
pub fn verify_certificate(
    gens: &[Poly<CycloNum>],
    cert: &Certificate,
    n_bound: i64,
    budget: &Budget,
) -> Result<VerifyReport, DetError> {
    let mut report = VerifyReport::default();
    let ring = gens
        .first()
        .ok_or_else(|| DetError::Input("empty ideal".into()))?
        .ring()
        .clone();
    let d = cert.p.nrows();
    let s = cert.m_list.len();
    let is_orbit = cert.kind.starts_with("orbit");
    let arity = ring.arity();

    // shape consistency
    let shape_ok = cert.p.is_square()
        && cert.p_inv.nrows() == d
        && cert.d_list.len() == s
        && cert.u_list.len() == s
        && (!is_orbit || cert.v.len() == d)
        && (is_orbit && arity == d || !is_orbit && (arity == d * d || arity == d));
    report.push("shape", shape_ok, format!("d={d}, s={s}, ring arity {arity}"));
    if !shape_ok {
        return Ok(report.finalize());
    }

    // exact structural identities
    let pp = cert.p.mul(&cert.p_inv);
    report.push("p-inverse", pp.is_identity(), "P * Pinv = Id");
    for (i, m) in cert.m_list.iter().enumerate() {
        let asm = cert.p_inv.mul(&cert.u_list[i]).mul(&cert.d_list[i]).mul(&cert.p);
        report.push(
            "m-assembly",
            asm == *m,
            format!("M_{i} = P^-1 U_{i} D_{i} P"),
        );
        report.push("u-unipotent", is_unipotent(&cert.u_list[i]), format!("U_{i}"));
        report.push("d-diagonal", cert.d_list[i].is_diagonal(), format!("D_{i}"));
        report.push(
            "ud-commute",
            cert.u_list[i].commutes_with(&cert.d_list[i]),
            format!("U_{i} D_{i} = D_{i} U_{i}"),
        );
        match jordan_chevalley(m) {
            Ok((ms, mu)) => {
                let want_s = cert.p_inv.mul(&cert.d_list[i]).mul(&cert.p);
                let want_u = cert.p_inv.mul(&cert.u_list[i]).mul(&cert.p);
                report.push(
                    "jordan-parts",
                    ms == want_s && mu == want_u,
                    format!("Jordan parts of M_{i} match the certificate"),
                );
            }
            Err(e) => report.push("jordan-parts", false, format!("M_{i}: {e}")),
        }
    }
    for i in 0..s {
        for j in i + 1..s {
            report.push(
                "m-commute",
                cert.m_list[i].commutes_with(&cert.m_list[j]),
                format!("M_{i} M_{j} = M_{j} M_{i}"),
            );
        }
    }
    if let Some(sel) = &cert.selector {
        let t: Mat<CycloNum> = sel.to_mat();
        let ttt = t.transpose().mul(&t);
        report.push("selector-orthonormal", ttt.is_identity(), "T^t T = Id_k");
        if is_orbit {
            let t1: Vec<CycloNum> = sel.times_ones();
            let want = cert.p_inv.mul_vec(&t1);
            report.push("base-point", cert.v == want, "v = P^-1 T 1");
        }
    } else if is_orbit {
        report.push("selector-orthonormal", false, "orbit certificate without selector");
    }

    // template bindings reproduce the unipotent parts
    if !cert.templates.is_empty() && cert.templates.len() == s {
        for (i, (tpl, vals)) in cert.templates.iter().enumerate() {
            if tpl.param_count() == vals.len() && tpl.dim() == d {
                let inst: Mat<CycloNum> = tpl.instantiate(vals);
                report.push(
                    "template-binding",
                    inst == cert.u_list[i],
                    format!("U_{i} equals its template instance"),
                );
            }
        }
    }

    // the diagonal generators must generate exactly H_Lambda
    let tuples: Vec<Vec<CycloNum>> = if is_orbit {
        let Some(sel) = &cert.selector else {
            return Ok(report.finalize());
        };
        cert.d_list
            .iter()
            .map(|dm| sel.selected().iter().map(|&c| dm[(c, c)].clone()).collect())
            .collect()
    } else {
        cert.d_list.iter().map(|dm| dm.diag()).collect()
    };
    if tuples.first().map(|t| !t.is_empty()).unwrap_or(false) {
        match relation_lattice_of_tuples(&tuples) {
            Some(rel) => report.push(
                "generator-lattice",
                rel == cert.lattice,
                "relation lattice of the diagonal generators equals Lambda",
            ),
            None => report.push(
                "generator-lattice",
                false,
                "diagonal entries are not rational multiples of roots of unity",
            ),
        }
    } else {
        report.push(
            "generator-lattice",
            cert.lattice.rank() == 0,
            "empty selector needs the zero lattice",
        );
    }

    // sampling: every generator vanishes on the sampled orbit/group points
    let mut inverses_ok = true;
    let mut inv_list: Vec<Mat<CycloNum>> = vec![];
    for m in &cert.m_list {
        match m.inverse() {
            Some(mi) => inv_list.push(mi),
            None => {
                inverses_ok = false;
                inv_list.push(Mat::identity(d));
            }
        }
    }
    report.push("m-invertible", inverses_ok, "all generators invertible");
    if inverses_ok {
        let tuples_n = power_tuples(s, n_bound);
        let mut all_ok = true;
        let mut detail = format!("{} sample points, bound {}", tuples_n.len(), n_bound);
        'outer: for tup in &tuples_n {
            let mut prod: Mat<CycloNum> = Mat::identity(d);
            for (i, &n) in tup.iter().enumerate() {
                let base = if n >= 0 { cert.m_list[i].clone() } else { inv_list[i].clone() };
                for _ in 0..n.unsigned_abs() {
                    prod = prod.mul(&base);
                }
            }
            let point: Vec<CycloNum> = if is_orbit {
                prod.mul_vec(&cert.v)
            } else if arity == d * d {
                (0..d)
                    .flat_map(|i| (0..d).map(move |j| (i, j)))
                    .map(|(i, j)| prod[(i, j)].clone())
                    .collect()
            } else {
                // diagonal shape: the sampled matrix must stay diagonal
                if !prod.is_diagonal() {
                    all_ok = false;
                    detail = format!("sample {tup:?} left the diagonal");
                    break 'outer;
                }
                prod.diag()
            };
            for g in gens {
                if !g.eval(&point).is_zero() {
                    all_ok = false;
                    detail = format!("generator `{g}` nonzero at sample {tup:?}");
                    break 'outer;
                }
            }
        }
        report.push("samples-vanish", all_ok, detail);
    }

    // closure reconstruction
    let recon: Result<Ideal<CycloNum>, DetError> = if is_orbit {
        match &cert.selector {
            Some(sel) => {
                orbit_closure_ideal(&ring, &cert.u_list, &cert.p_inv, sel, &cert.lattice, budget)
            }
            None => Err(DetError::Input("missing selector".into())),
        }
    } else if arity == d * d {
        group_closure_ideal(&ring, &cert.u_list, &cert.p_inv, &cert.p, &cert.lattice, budget)
    } else {
        // diagonal shape: expect trivial conjugation and no unipotent part
        if cert.p.is_identity() && cert.u_list.iter().all(Mat::is_identity) {
            lattice_ideal::<CycloNum>(&cert.lattice, &ring, budget)
        } else {
            Err(DetError::Input(
                "diagonal-shape certificate with nontrivial P or U".into(),
            ))
        }
    };
    match recon {
        Ok(ideal) => {
            let input = Ideal::new(ring.clone(), gens.to_vec());
            match input.equal(&ideal, &MonomialOrder::GrevLex, budget) {
                Ok(eq) => report.push(
                    "closure-reconstruction",
                    eq,
                    "reconstructed closure ideal equals the input ideal",
                ),
                Err(e) => report.push("closure-reconstruction", false, format!("{e}")),
            }
        }
        Err(e) => report.push("closure-reconstruction", false, format!("{e}")),
    }

    Ok(report.finalize())
}

fn power_tuples(s: usize, n: i64) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..s {
        let mut next = vec![];
        for t in &out {
            for v in -n..=n {
                let mut u = t.clone();
                u.push(v);
                next.push(u);
            }
        }
        out = next;
    }
    out
}
