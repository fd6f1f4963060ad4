//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest harness so the lines
//! are always printed.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tropcoh_cli::corpus;
use tropcoh_cohomology::engines::compact_cochain_complex;
use tropcoh_cohomology::{
    betti_tables, compact_cohomology, fundamental_cycle_boundary, multitangent_space,
    ordinary_cohomology, pd_report, build_sheaf,
};
use tropcoh_core::linalg::rational::{binomial, rat, rat_frac, Rational};
use tropcoh_core::polyhedral::ops::{closure, product, real_space, restrict_to_stratum, subdivide_rays, tropical_space};
use tropcoh_core::polyhedral::{is_balanced, Polyhedron, PolyhedralComplex};
use tropcoh_matroids::poly::characteristic_polynomial_by_subsets;
use tropcoh_matroids::{bergman_fan, loopless_matroids_up_to_iso, os_dims, Matroid};
use tropcoh_modifications::{
    closed_modification, complete_modification, equal_up_to_refinement, project_modification,
};
use tropcoh_superforms::{balanced_face_cancellation, stokes_cell_residual, Poly, Superform};

type Outcome = Result<String, String>;

fn check(ok: bool, msg: impl Into<String>) -> Outcome {
    if ok {
        Ok(msg.into())
    } else {
        Err(msg.into())
    }
}

fn e<T>(r: tropcoh_core::Result<T>) -> Result<T, String> {
    r.map_err(|x| format!("{}: {x}", x.kind()))
}

/// `dim F^p` at the origin of a fan (its unique vertex or minimal cell).
fn origin_dims(c: &PolyhedralComplex) -> Vec<usize> {
    let min = (0..c.len()).min_by_key(|&i| c.cell(i).dim()).expect("nonempty fan");
    (0..=c.dim()).map(|p| multitangent_space(c, min, p).dim()).collect()
}

fn criterion_1() -> Outcome {
    let c = corpus::tropical_line();
    let r = e(pd_report(&c))?;
    // hand oracle for the compact side: p = 0 has dims (1, 3) with coboundary of rank 1,
    // p = 1 has dims (2, 3) with rank 2
    let hand = [[1 - 1, 3 - 1], [2 - 2, 3 - 2]];
    let mut by_rank = Vec::new();
    for p in 0..=1 {
        let cc = compact_cochain_complex(&e(build_sheaf(&c, p))?);
        let ranks = cc.ranks();
        by_rank.push(vec![cc.dims[0] - ranks[0], cc.dims[1] - ranks[0]]);
    }
    check(
        r.ordinary.h == [[1, 0], [2, 0]]
            && r.compact.h == [[0, 2], [0, 1]]
            && by_rank == hand
            && r.pd_holds,
        format!("h = {:?}, h_c = {:?}, PD {}", r.ordinary.h, r.compact.h, r.pd_holds),
    )
}

fn criterion_2() -> Outcome {
    let r = e(pd_report(&corpus::axes()))?;
    check(
        r.ordinary.get(0, 0) == 1 && r.compact.get(1, 1) == 2 && !r.pd_holds,
        format!("h00 = {}, h11_c = {}, PD {}", r.ordinary.get(0, 0), r.compact.get(1, 1), r.pd_holds),
    )
}

fn criterion_3() -> Outcome {
    let d0 = corpus::projective_line(0);
    let d1 = corpus::projective_line(1);
    let h0 = e(ordinary_cohomology(&d0))?;
    let h1 = e(ordinary_cohomology(&d1))?;
    let c0 = e(compact_cohomology(&d0))?;
    let c1 = e(compact_cohomology(&d1))?;
    check(
        h0 == [1, 0] && h1 == [0, 1] && c0 == h0 && c1 == h1,
        format!("h00 = {}, h01 = {}, h10 = {}, h11 = {}", h0[0], h0[1], h1[0], h1[1]),
    )
}

fn criterion_4() -> Outcome {
    for n in 1..=3 {
        let (h, hc) = e(betti_tables(&real_space(n)))?;
        for p in 0..=n {
            for q in 0..=n {
                let want_h = if q == 0 { binomial(n, p) } else { 0 };
                let want_c = if q == n { binomial(n, p) } else { 0 };
                if h.get(p, q) != want_h || hc.get(p, q) != want_c {
                    return Err(format!("R^{n} at ({p},{q}): {} / {}", h.get(p, q), hc.get(p, q)));
                }
            }
        }
    }
    Ok("R^1, R^2, R^3 match binomial tables".into())
}

fn criterion_5() -> Outcome {
    let f = bergman_fan(&e(Matroid::uniform(2, 3))?).map_err(|x| x.to_string())?;
    let mut rays: Vec<(Vec<BigInt>, BigInt)> = f
        .weighted_maximal_cells()
        .into_iter()
        .map(|(p, w)| (p.rays()[0].clone(), w))
        .collect();
    rays.sort();
    let mut want: Vec<(Vec<BigInt>, BigInt)> = [[-1, 0], [0, -1], [1, 1]]
        .iter()
        .map(|r| (r.iter().map(|&x| BigInt::from(x)).collect(), BigInt::from(1)))
        .collect();
    want.sort();
    let vertex_ok = f.cells_of_dim(0).len() == 1;
    let m = e(Matroid::uniform(3, 4))?;
    let v = e(bergman_fan(&m))?;
    let balanced = e(is_balanced(&v))?;
    let dims = origin_dims(&v);
    // independent oracle: reduced characteristic polynomial from the subset expansion
    let chi = characteristic_polynomial_by_subsets(&m);
    let mut q = vec![BigInt::from(0); chi.len() - 1];
    let mut carry = BigInt::from(0);
    for i in (1..chi.len()).rev() {
        carry += &chi[i];
        q[i - 1] = carry.clone();
    }
    let oracle: Vec<usize> = q.iter().rev().map(|c| usize::try_from(c.magnitude().clone()).unwrap()).collect();
    let os = e(os_dims(&m))?;
    check(
        rays == want && vertex_ok && balanced && dims == [1, 3, 3] && os == dims && oracle == dims,
        format!("U(2,3) rays {:?}; U(3,4) balanced {balanced}, F^p(0) {dims:?}, os_dims {os:?}, oracle {oracle:?}",
            rays.iter().map(|r| r.0.clone()).collect::<Vec<_>>()),
    )
}

fn criterion_6() -> Outcome {
    let mut count = 0;
    let mut pairs = 0;
    for n in 1..=5 {
        for m in loopless_matroids_up_to_iso(n) {
            count += 1;
            let v = e(bergman_fan(&m))?;
            let d = v.dim();
            if !e(is_balanced(&v))? {
                return Err(format!("unbalanced fan for bases {:?}", m.bases_as_lists()));
            }
            let r = e(pd_report(&v))?;
            for p in 0..=d {
                for q in 0..d {
                    if r.compact.get(p, q) != 0 {
                        return Err(format!("h_c^({p},{q}) != 0 for bases {:?}", m.bases_as_lists()));
                    }
                }
            }
            if !r.pd_holds {
                return Err(format!("PD fails for bases {:?}", m.bases_as_lists()));
            }
            let fv = origin_dims(&v);
            for el in 0..m.ground_size() {
                if m.is_coloop(el) {
                    continue;
                }
                pairs += 1;
                let (del, con) = e(m.minors(el))?;
                let fw = origin_dims(&e(bergman_fan(&del))?);
                let fd: Vec<usize> = if con.loops().is_empty() {
                    origin_dims(&e(bergman_fan(&con))?)
                } else {
                    Vec::new()
                };
                for p in 0..fv.len() {
                    let w = fw.get(p).copied().unwrap_or(0);
                    let dd = if p == 0 { 0 } else { fd.get(p - 1).copied().unwrap_or(0) };
                    if fv[p] != w + dd {
                        return Err(format!(
                            "deletion-contraction fails at p = {p}, e = {el}, bases {:?}",
                            m.bases_as_lists()
                        ));
                    }
                }
            }
        }
    }
    check(count == 37, format!("{count} loopless classes, {pairs} (matroid, element) pairs"))
}

fn criterion_7() -> Outcome {
    let mut seen = Vec::new();
    for (r, n) in [(2, 3), (3, 4)] {
        let f = corpus::uniform_fan(r, n);
        for s in 1..=2 {
            let c = e(product(&f, &tropical_space(s)))?;
            let rep = e(pd_report(&c))?;
            if !rep.pd_holds {
                return Err(format!("PD fails on U({r},{n}) x T^{s}"));
            }
            seen.push(format!("U({r},{n})xT^{s}"));
        }
    }
    Ok(format!("PD symmetric on {}", seen.join(", ")))
}

fn criterion_8() -> Outcome {
    let w = real_space(1);
    let m = e(complete_modification(&w, &corpus::max_zero_x()))?;
    let line = corpus::tropical_line();
    let is_line = e(equal_up_to_refinement(&m.v, &line))?;
    let origin = |d: &Option<PolyhedralComplex>| {
        d.as_ref().is_some_and(|d| {
            d.dim() == 0
                && d.facets().len() == 1
                && d.weight(d.facets()[0]) == Some(&BigInt::from(1))
                && d.cell(d.facets()[0]).polyhedron.vertices()[0] == vec![rat(0)]
        })
    };
    let back = e(project_modification(&line, 2))?;
    let w_back = e(equal_up_to_refinement(&back.w, &w))?;
    let closed = e(closed_modification(&w, &corpus::max_zero_x()))?;
    let (h1, c1) = e(betti_tables(&closed.v))?;
    let (h0, c0) = e(betti_tables(&w))?;
    check(
        is_line && origin(&m.divisor) && w_back && origin(&back.divisor) && h1.h == h0.h && c1.h == c0.h,
        format!(
            "V = L {is_line}, D = origin {}, projection recovers R {w_back} and the origin {}, closed tables {:?}/{:?}",
            origin(&m.divisor),
            origin(&back.divisor),
            h1.h,
            c1.h
        ),
    )
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    rat_frac(rng.gen_range(-6..=6), rng.gen_range(1..=3))
}

fn random_poly(rng: &mut ChaCha8Rng, r: usize) -> Poly {
    let mut f = Poly::zero(r);
    for _ in 0..rng.gen_range(1..=4) {
        let deg = rng.gen_range(0..=3);
        let mut ex = vec![0u32; r];
        for _ in 0..deg {
            ex[rng.gen_range(0..r)] += 1;
        }
        f.add_term(ex, random_rational(rng));
    }
    f
}

fn random_subset(rng: &mut ChaCha8Rng, r: usize, k: usize) -> Vec<usize> {
    let mut all: Vec<usize> = (0..r).collect();
    for i in 0..r {
        let j = rng.gen_range(i..r);
        all.swap(i, j);
    }
    let mut s = all[..k].to_vec();
    s.sort();
    s
}

fn random_form(rng: &mut ChaCha8Rng, r: usize, n: usize) -> Superform {
    let mut b = Superform::zero(r, n, n - 1);
    for _ in 0..rng.gen_range(1..=3) {
        let k = random_subset(rng, r, n);
        let l = random_subset(rng, r, n - 1);
        let t = Superform::term(r, &k, &l, random_poly(rng, r)).unwrap();
        b = b.add(&t).unwrap();
    }
    b
}

fn random_polytope(rng: &mut ChaCha8Rng, r: usize, n: usize, prism: bool) -> Polyhedron {
    loop {
        let pt = |rng: &mut ChaCha8Rng| (0..r).map(|_| random_rational(rng)).collect::<Vec<_>>();
        let base = if prism { n } else { n + 1 };
        let mut vs: Vec<Vec<Rational>> = (0..base).map(|_| pt(rng)).collect();
        if prism {
            let w = pt(rng);
            let shifted: Vec<Vec<Rational>> =
                vs.iter().map(|v| v.iter().zip(&w).map(|(a, b)| a + b).collect()).collect();
            vs.extend(shifted);
        }
        let p = Polyhedron::from_generators(r, &[], &vs, &[], &[]).unwrap();
        if p.dim() == n {
            return p;
        }
    }
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(20_241_015);
    let mut cases = 0;
    for i in 0..100 {
        let n = 1 + i % 3;
        let r = n + (i / 3) % 2;
        let prism = n >= 2 && i % 2 == 0;
        let sigma = random_polytope(&mut rng, r, n, prism);
        let beta = random_form(&mut rng, r, n);
        let res = e(stokes_cell_residual(&beta, &sigma))?;
        if res != rat(0) {
            return Err(format!("nonzero residual {res} in case {i} (n = {n}, r = {r})"));
        }
        cases += 1;
    }
    let one_dim = |r: usize| {
        let mut f = Poly::one(r);
        f.add_term({ let mut x = vec![0; r]; x[0] = 1; x }, rat(1));
        let mut b = Superform::term(r, &[0], &[], f).unwrap();
        b = b.add(&Superform::term(r, &[1], &[], Poly::var(r, 1)).unwrap()).unwrap();
        b
    };
    let box_of = |r: usize| vec![(rat(-1), rat(2)); r];
    let mut zero = Vec::new();
    for (name, c) in [("L", corpus::tropical_line()), ("Y", corpus::axes())] {
        let v = e(balanced_face_cancellation(&c, &one_dim(2), &box_of(2)))?;
        zero.push((name, !v.is_empty() && v.values().all(|x| *x == rat(0))));
    }
    let u34 = corpus::uniform_fan(3, 4);
    let mut f = Poly::one(3);
    f.add_term(vec![1, 0, 1], rat(2));
    f.add_term(vec![0, 2, 0], rat_frac(-1, 3));
    let beta = Superform::term(3, &[0, 1], &[2], f)
        .unwrap()
        .add(&Superform::term(3, &[1, 2], &[0], Poly::var(3, 1)).unwrap())
        .unwrap();
    let v = e(balanced_face_cancellation(&u34, &beta, &box_of(3)))?;
    zero.push(("U(3,4)", !v.is_empty() && v.values().all(|x| *x == rat(0))));
    let m = e(balanced_face_cancellation(&corpus::line_mutant(), &one_dim(2), &box_of(2)))?;
    let nonzero = m.values().any(|x| *x != rat(0));
    check(
        cases == 100 && zero.iter().all(|z| z.1) && nonzero,
        format!("{cases} random residuals zero; cancellation zero on {zero:?}; mutant nonzero {nonzero}"),
    )
}

fn criterion_10() -> Outcome {
    let mut report = Vec::new();
    let mut ok = true;
    for (name, c) in corpus::balanced_complexes() {
        let b = e(is_balanced(&c))?;
        let z = e(fundamental_cycle_boundary(&c))?.is_empty();
        ok &= b && z;
        report.push(format!("{name}: {b}/{z}"));
    }
    for (name, c) in corpus::unbalanced_mutants() {
        let b = e(is_balanced(&c))?;
        let z = e(fundamental_cycle_boundary(&c))?.is_empty();
        ok &= !b && !z;
        report.push(format!("{name}: {b}/{z}"));
    }
    check(ok, format!("balanced/boundary-zero: {}", report.join(", ")))
}

fn compact_euler(c: &PolyhedralComplex, p: usize) -> Result<i64, String> {
    if c.is_empty() || p > c.dim() {
        return Ok(0);
    }
    let row = e(compact_cohomology(&e(build_sheaf(c, p))?))?;
    Ok(row.iter().enumerate().map(|(q, &h)| if q % 2 == 0 { h as i64 } else { -(h as i64) }).sum())
}

fn criterion_11() -> Outcome {
    let cases = [
        ("closure of L in R x T", e(closure(&corpus::tropical_line(), &[1]))?, 1usize),
        ("T1", tropical_space(1), 0),
        ("closure of U(3,4) in R^2 x T", e(closure(&corpus::uniform_fan(3, 4), &[2]))?, 2),
    ];
    let mut out = Vec::new();
    for (name, omega, i) in cases {
        let u = e(restrict_to_stratum(&omega, &[]))?;
        let d = e(restrict_to_stratum(&omega, &[i]))?;
        for p in 0..=omega.dim() {
            let total = compact_euler(&u, p)? - compact_euler(&omega, p)? + compact_euler(&d, p)?;
            if total != 0 {
                return Err(format!("{name}, p = {p}: alternating sum {total}"));
            }
        }
        out.push(name);
    }
    Ok(format!("additive on {}", out.join(", ")))
}

fn criterion_12() -> Outcome {
    let l = corpus::tropical_line();
    let s = e(subdivide_rays(&l))?;
    let (h, hc) = e(betti_tables(&l))?;
    let (hs, hcs) = e(betti_tables(&s))?;
    let sizes = (l.len(), s.len());
    check(
        h.h == hs.h && hc.h == hcs.h && s.cells_of_dim(1).len() == 6,
        format!("{} -> {} cells, tables {:?}/{:?}", sizes.0, sizes.1, hs.h, hcs.h),
    )
}

fn main() {
    let criteria: [(&str, fn() -> Outcome, Duration); 12] = [
        ("tropical line tables and duality", criterion_1, Duration::from_secs(1)),
        ("coordinate axes", criterion_2, Duration::from_secs(1)),
        ("abstract projective line datum", criterion_3, Duration::from_secs(1)),
        ("real affine spaces", criterion_4, Duration::from_secs(5)),
        ("Bergman fans of U(2,3) and U(3,4)", criterion_5, Duration::from_secs(5)),
        ("loopless matroids on at most 5 elements", criterion_6, Duration::from_secs(600)),
        ("matroidal fans times tropical affine space", criterion_7, Duration::from_secs(120)),
        ("modification golden case", criterion_8, Duration::from_secs(5)),
        ("Stokes suite", criterion_9, Duration::from_secs(120)),
        ("fundamental cycle criterion", criterion_10, Duration::from_secs(600)),
        ("Euler additivity", criterion_11, Duration::from_secs(60)),
        ("subdivision invariance", criterion_12, Duration::from_secs(600)),
    ];
    let mut failed = 0;
    for (i, (name, f, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let res = f();
        let took = start.elapsed();
        let (tag, msg) = match res {
            Ok(m) if took <= *limit => ("PASS", m),
            Ok(m) => ("FAIL", format!("{m}; took {took:.2?}, limit {limit:?}")),
            Err(m) => ("FAIL", m),
        };
        if tag == "FAIL" {
            failed += 1;
        }
        println!("{tag} criterion {:>2} {name} [{took:.2?}]: {msg}", i + 1);
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
    println!("all 12 acceptance criteria passed");
}
