//! Brute-force oracle for design parameters. For a quasi-symmetric design
//! with incidence matrix N and intersection numbers x < y = x + mu,
//! N'N = (k - x) I + mu A + x J, so the block graph spectrum is read off
//! the eigenvalues rk, r - lambda, 0 of N'N. The oracle scans v and k
//! against that spectrum and shares no code with the quadratic route.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use proptest::prelude::*;

use qsdesign::designs::{
    derive_params, enum_cotriangular, enum_multipartite, enum_steiner, feasibility, DesignParams,
    MultipartiteBounds, Quadruple,
};
use qsdesign::srg::{family_spectral, GraphFamily, SpectralParams, Spectrum};

type Params = [i128; 7];

fn b(x: i64) -> BigInt {
    BigInt::from(x)
}

fn small(x: &BigInt) -> i128 {
    i128::try_from(x).expect("fits i128")
}

fn key(d: &DesignParams) -> Params {
    [&d.b, &d.v, &d.r, &d.k, &d.lambda, &d.lambda1, &d.lambda2].map(small)
}

fn brute(sp: &SpectralParams, mu: i128) -> BTreeSet<Params> {
    let (rho, sigma, f, g) = (
        small(sp.rho()),
        small(sp.sigma()),
        small(sp.f()),
        small(sp.g()),
    );
    let blocks = f + g + 1;
    let degree = small(&sp.degree());
    let mut out = BTreeSet::new();
    for (theta, mult, other) in [(rho, f, sigma), (sigma, g, rho)] {
        let v = mult + 1;
        for k in 2..v - 1 {
            if (blocks * k) % v != 0 {
                continue;
            }
            let r = blocks * k / v;
            if (r * (k - 1)) % (v - 1) != 0 {
                continue;
            }
            let lambda = r * (k - 1) / (v - 1);
            let x = k + mu * other;
            if x < 0 || x + mu > k || lambda < 1 {
                continue;
            }
            if r - lambda - k + x != mu * theta || r * k - k + x - x * blocks != mu * degree {
                continue;
            }
            out.insert([blocks, v, r, k, lambda, x, x + mu]);
        }
    }
    out
}

fn quadratic(sp: &SpectralParams, mu: i64) -> BTreeSet<Params> {
    let report = feasibility(&Spectrum::Integral(sp.clone()), &b(mu));
    let mut out = BTreeSet::new();
    if report.is_feasible() {
        let (d, c) = derive_params(sp, &b(mu)).expect("feasible parameters derive");
        out.insert(key(&d));
        out.insert(key(&c));
    }
    out
}

fn spectral(fam: &GraphFamily) -> SpectralParams {
    family_spectral(fam).expect("family spectrum")
}

#[test]
fn steiner_feasibility_matches_oracle() {
    let mut feasible = 0;
    for n in 2..=6i64 {
        for m in (n + 1)..=100 {
            if (m * (m - 1)) % n != 0 {
                continue;
            }
            let sp = spectral(&GraphFamily::Steiner { n: b(n), m: b(m) });
            for mu in 1..=10i64 {
                let want = brute(&sp, i128::from(mu));
                assert_eq!(quadratic(&sp, mu), want, "S_{n}({m}) mu={mu}");
                feasible += usize::from(!want.is_empty());
            }
        }
    }
    assert!(feasible > 30);
}

#[test]
fn steiner_enumeration_matches_scan() {
    let cap = b(100);
    for n in 3..=6i64 {
        for mu in 2..=10i64 {
            let listed: BTreeMap<i128, Params> = enum_steiner(&b(n), &b(mu), None)
                .expect("stream")
                .into_iter()
                .filter(|e| e.m <= cap)
                .map(|e| (small(&e.m), key(&e.params)))
                .collect();
            let scanned: BTreeMap<i128, BTreeSet<Params>> = ((n + 1)..=100)
                .filter(|m| (m * (m - 1)) % n == 0)
                .filter_map(|m| {
                    let found = brute(
                        &spectral(&GraphFamily::Steiner { n: b(n), m: b(m) }),
                        i128::from(mu),
                    );
                    (!found.is_empty()).then_some((i128::from(m), found))
                })
                .collect();
            assert_eq!(
                listed.keys().collect::<Vec<_>>(),
                scanned.keys().collect::<Vec<_>>(),
                "n={n} mu={mu}"
            );
            for (m, p) in &listed {
                assert!(scanned[m].contains(p));
            }
        }
    }
    // mu = 1: every admissible m is a Steiner system's block graph.
    let listed: Vec<i128> = enum_steiner(&b(3), &b(1), Some(&cap))
        .expect("stream")
        .iter()
        .map(|e| small(&e.m))
        .collect();
    let all: Vec<i128> = (4..=100).filter(|m| m % 3 != 2).collect();
    assert_eq!(listed, all);
}

#[test]
fn triangular_steiner_streams_are_empty() {
    for mu in 2..=10i64 {
        assert!(enum_steiner(&b(2), &b(mu), Some(&b(50)))
            .expect("stream")
            .is_empty());
    }
}

#[test]
fn multipartite_enumeration_matches_scan() {
    let bounds = MultipartiteBounds {
        max_alpha: 12,
        max_l_sum: 25,
        max_t: 12,
    };
    let mut listed: BTreeMap<(i128, i128, i128), BTreeSet<Params>> = BTreeMap::new();
    let mut all_params = BTreeSet::new();
    for e in enum_multipartite(bounds) {
        let (n, m, mu) = (small(&e.n), small(&e.m), small(&e.mu));
        assert!(
            all_params.insert(key(&e.params)),
            "duplicate parameters for {:?}",
            e.quad
        );
        if n <= 25 && m <= 25 && mu <= 12 {
            listed.entry((m, n, mu)).or_default().insert(key(&e.params));
        }
    }
    let mut scanned: BTreeMap<(i128, i128, i128), BTreeSet<Params>> = BTreeMap::new();
    for m in 2..=25i64 {
        for n in 2..=25i64 {
            let sp = spectral(&GraphFamily::Multipartite { m: b(m), n: b(n) });
            for mu in 1..=12i64 {
                let found = brute(&sp, i128::from(mu));
                assert_eq!(quadratic(&sp, mu), found, "K_{{{m}x{n}}} mu={mu}");
                if !found.is_empty() {
                    scanned.insert((i128::from(m), i128::from(n), i128::from(mu)), found);
                }
            }
        }
    }
    assert_eq!(listed, scanned);

    // For fixed (n, mu) with n > 2 at most one m occurs.
    let mut by_n_mu: BTreeMap<(i128, i128), BTreeSet<i128>> = BTreeMap::new();
    for (m, n, mu) in scanned.keys() {
        by_n_mu.entry((*n, *mu)).or_default().insert(*m);
    }
    for ((n, mu), ms) in &by_n_mu {
        if *n > 2 {
            assert_eq!(ms.len(), 1, "n={n} mu={mu}: {ms:?}");
        }
    }
}

#[test]
fn cotriangular_enumeration_matches_scan() {
    for mu in 1..=6i64 {
        let max_n = if mu == 1 {
            60
        } else {
            4 * mu + 2 + 4 * mu * (mu - 1)
        };
        let mut listed: BTreeMap<i128, BTreeSet<Params>> = BTreeMap::new();
        for e in enum_cotriangular(&b(mu))
            .expect("stream")
            .take_while(|e| e.n <= b(max_n))
        {
            let entry = listed.entry(small(&e.n)).or_default();
            entry.insert(key(&e.params));
            entry.insert(key(&e.complement));
        }
        let mut scanned: BTreeMap<i128, BTreeSet<Params>> = BTreeMap::new();
        for n in 5..=max_n {
            let sp = spectral(&GraphFamily::CoTriangular { n: b(n) });
            let found = brute(&sp, i128::from(mu));
            assert_eq!(quadratic(&sp, mu), found, "T_{n}* mu={mu}");
            if !found.is_empty() {
                scanned.insert(i128::from(n), found);
            }
        }
        assert_eq!(listed, scanned, "mu={mu}");
    }
}

#[test]
fn symplectic_feasibility_matches_oracle() {
    for d in 2..=5u32 {
        let sp = spectral(&GraphFamily::Symplectic { d, q: b(2) });
        for mu in 1..=40i64 {
            assert_eq!(
                quadratic(&sp, mu),
                brute(&sp, i128::from(mu)),
                "Sp({},2) mu={mu}",
                2 * d
            );
        }
    }
}

#[test]
fn table_rows_satisfy_counting_identities() {
    for row in qsdesign::designs::table1(&Default::default()).expect("table") {
        let sp = spectral(&GraphFamily::Steiner {
            n: row.n.clone(),
            m: row.m.clone(),
        });
        let mu = small(&row.params.mu());
        assert!(
            brute(&sp, mu).contains(&key(&row.params)),
            "row {}",
            row.number
        );
    }
}

proptest! {
    #[test]
    fn quadruple_parameters_match_derivation(alpha in 1u64..8, split in 0usize..64, t in 0u64..6) {
        let prod = alpha * (alpha - 1);
        let pairs: Vec<(u64, u64)> = if prod == 0 {
            (0..8).flat_map(|k| [(0, k), (k, 0)]).collect()
        } else {
            (1..=prod).filter(|d| prod % d == 0).map(|d| (d, prod / d)).collect()
        };
        let (l, ls) = pairs[split % pairs.len()];
        let q = Quadruple::from_u64(alpha, l, ls, t);
        prop_assume!(q.is_ok());
        let q = q.unwrap();
        let params = q.params().unwrap();
        let sp = spectral(&GraphFamily::Multipartite { m: q.m(), n: q.n() });
        prop_assert!(brute(&sp, small(&q.mu())).contains(&key(&params)));
        let (d, c) = derive_params(&sp, &q.mu()).unwrap();
        prop_assert!(params == d || params == c);
        prop_assert_eq!(q.swapped().params().unwrap(), params.complement());
    }
}
