//! Multivariate gcd over the integers by Brown's dense modular algorithm:
//! images modulo word-size primes, recursive evaluation/interpolation on the
//! trailing variable, Chinese remaindering, and a final trial division.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::mpoly::{MPoly, Monomial, NVARS};

type Key = [u16; NVARS];

#[inline]
fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

#[inline]
fn addmod(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
fn submod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

fn invmod(a: u64, p: u64) -> u64 {
    debug_assert!(a != 0);
    powmod(a, p - 2, p)
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for sp in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(sp) {
            return n == sp;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'outer: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

fn primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let mut out = Vec::new();
        let mut c = (1u64 << 62) - 1;
        while out.len() < 64 {
            if is_prime(c) {
                out.push(c);
            }
            c -= 2;
        }
        out
    })
}

struct SplitMix(u64);

impl SplitMix {
    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
}

// ---------- dense univariate polynomials mod p ----------

fn utrim(mut u: Vec<u64>) -> Vec<u64> {
    while u.last() == Some(&0) {
        u.pop();
    }
    u
}

fn ueval(u: &[u64], x: u64, p: u64) -> u64 {
    let mut acc = 0u64;
    for &c in u.iter().rev() {
        acc = addmod(mulmod(acc, x, p), c, p);
    }
    acc
}

fn umonic(u: &mut [u64], p: u64) {
    if let Some(&l) = u.last() {
        if l != 1 {
            let inv = invmod(l, p);
            for c in u.iter_mut() {
                *c = mulmod(*c, inv, p);
            }
        }
    }
}

fn urem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let inv = invmod(*b.last().unwrap(), p);
    while r.len() > db && !r.is_empty() {
        let lc = *r.last().unwrap();
        if lc == 0 {
            r.pop();
            continue;
        }
        let f = mulmod(lc, inv, p);
        let shift = r.len() - 1 - db;
        for (i, &bc) in b.iter().enumerate() {
            r[shift + i] = submod(r[shift + i], mulmod(f, bc, p), p);
        }
        r.pop();
    }
    utrim(r)
}

fn udivexact(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() {
        return Vec::new();
    }
    let db = b.len() - 1;
    let mut r = a.to_vec();
    let mut q = vec![0u64; a.len() - db];
    let inv = invmod(*b.last().unwrap(), p);
    for k in (0..q.len()).rev() {
        let f = mulmod(r[k + db], inv, p);
        q[k] = f;
        if f != 0 {
            for (i, &bc) in b.iter().enumerate() {
                r[k + i] = submod(r[k + i], mulmod(f, bc, p), p);
            }
        }
    }
    utrim(q)
}

fn ugcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = utrim(a.to_vec());
    let mut b = utrim(b.to_vec());
    while !b.is_empty() {
        let r = urem(&a, &b, p);
        a = b;
        b = r;
    }
    umonic(&mut a, p);
    a
}

fn umul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = addmod(out[i + j], mulmod(x, y, p), p);
        }
    }
    utrim(out)
}

fn udeg(u: &[u64]) -> usize {
    u.len().saturating_sub(1)
}

// ---------- sparse multivariate polynomials mod p ----------
// Variables are permuted so that positions 0..k are active; lexicographic
// order on the raw key arrays is then lex order with position 0 dominant.

/// Terms sorted descending (leading term first), coefficients nonzero.
type ModPoly = Vec<(Key, u64)>;

fn mp_monic(a: &mut ModPoly, p: u64) {
    if let Some(&(_, l)) = a.first() {
        if l != 1 {
            let inv = invmod(l, p);
            for t in a.iter_mut() {
                t.1 = mulmod(t.1, inv, p);
            }
        }
    }
}

fn mp_is_const(a: &ModPoly) -> bool {
    a.len() == 1 && a[0].0.iter().all(|&e| e == 0)
}

fn group_last(a: &ModPoly, v: usize) -> BTreeMap<Key, Vec<u64>> {
    let mut g: BTreeMap<Key, Vec<u64>> = BTreeMap::new();
    for (k, c) in a {
        let e = k[v] as usize;
        let mut key = *k;
        key[v] = 0;
        let u = g.entry(key).or_default();
        if u.len() <= e {
            u.resize(e + 1, 0);
        }
        u[e] = *c;
    }
    g
}

fn ungroup(g: &BTreeMap<Key, Vec<u64>>, v: usize) -> ModPoly {
    let mut out: ModPoly = Vec::new();
    for (key, u) in g {
        for (e, &c) in u.iter().enumerate() {
            if c != 0 {
                let mut k = *key;
                k[v] = e as u16;
                out.push((k, c));
            }
        }
    }
    out.sort_unstable_by(|a, b| b.0.cmp(&a.0));
    out
}

fn eval_grouped(g: &BTreeMap<Key, Vec<u64>>, beta: u64, p: u64) -> ModPoly {
    let mut out: ModPoly = Vec::new();
    for (key, u) in g.iter().rev() {
        let c = ueval(u, beta, p);
        if c != 0 {
            out.push((*key, c));
        }
    }
    out
}

/// Monic gcd of `a` and `b` over Z_p in the active variables `0..k`.
fn pgcd(a: &ModPoly, b: &ModPoly, k: usize, p: u64, rng: &mut SplitMix) -> ModPoly {
    if a.is_empty() {
        let mut b = b.clone();
        mp_monic(&mut b, p);
        return b;
    }
    if b.is_empty() {
        let mut a = a.clone();
        mp_monic(&mut a, p);
        return a;
    }
    let one: ModPoly = vec![([0; NVARS], 1)];
    if k == 0 {
        return one;
    }
    if k == 1 {
        let to_u = |x: &ModPoly| {
            let mut u = vec![0u64; x[0].0[0] as usize + 1];
            for (key, c) in x {
                u[key[0] as usize] = *c;
            }
            u
        };
        let g = ugcd(&to_u(a), &to_u(b), p);
        let mut out: ModPoly = Vec::new();
        for (e, &c) in g.iter().enumerate().rev() {
            if c != 0 {
                let mut key = [0; NVARS];
                key[0] = e as u16;
                out.push((key, c));
            }
        }
        return out;
    }
    let v = k - 1;
    let mut ga = group_last(a, v);
    let mut gb = group_last(b, v);
    let cont = |g: &BTreeMap<Key, Vec<u64>>| {
        let mut c: Vec<u64> = Vec::new();
        for u in g.values() {
            c = ugcd(&c, u, p);
            if c.len() == 1 {
                break;
            }
        }
        c
    };
    let ca = cont(&ga);
    let cb = cont(&gb);
    if ca.len() > 1 {
        for u in ga.values_mut() {
            *u = udivexact(u, &ca, p);
        }
    }
    if cb.len() > 1 {
        for u in gb.values_mut() {
            *u = udivexact(u, &cb, p);
        }
    }
    let c = ugcd(&ca, &cb, p);
    let lca = ga.values().next_back().unwrap().clone();
    let lcb = gb.values().next_back().unwrap().clone();
    let g = ugcd(&lca, &lcb, p);
    let da = ga.values().map(|u| udeg(u)).max().unwrap_or(0);
    let db = gb.values().map(|u| udeg(u)).max().unwrap_or(0);
    let bound = udeg(&g) + da.min(db);

    let content_only = |c: &[u64]| -> ModPoly {
        let mut out: ModPoly = Vec::new();
        for (e, &x) in c.iter().enumerate().rev() {
            if x != 0 {
                let mut key = [0; NVARS];
                key[v] = e as u16;
                out.push((key, x));
            }
        }
        mp_monic(&mut out, p);
        out
    };

    let mut interp: Option<(Key, BTreeMap<Key, Vec<u64>>, Vec<u64>, usize)> = None;
    loop {
        let beta = rng.next() % p;
        let gval = ueval(&g, beta, p);
        if gval == 0 || ueval(&lca, beta, p) == 0 || ueval(&lcb, beta, p) == 0 {
            continue;
        }
        let ea = eval_grouped(&ga, beta, p);
        let eb = eval_grouped(&gb, beta, p);
        let mut h = pgcd(&ea, &eb, k - 1, p, rng);
        if mp_is_const(&h) {
            return content_only(&c);
        }
        for t in h.iter_mut() {
            t.1 = mulmod(t.1, gval, p);
        }
        let lead = h[0].0;
        let restart = match &interp {
            None => true,
            Some((cur, ..)) => match lead.cmp(cur) {
                Ordering::Less => true,
                Ordering::Greater => continue,
                Ordering::Equal => false,
            },
        };
        if restart {
            let mut hm: BTreeMap<Key, Vec<u64>> = BTreeMap::new();
            for (key, cf) in &h {
                hm.insert(*key, vec![*cf]);
            }
            let q = vec![submod(0, beta, p), 1];
            interp = Some((lead, hm, q, 1));
        } else {
            let (_, hm, q, npts) = interp.as_mut().unwrap();
            let qb = ueval(q, beta, p);
            if qb == 0 {
                continue;
            }
            let inv = invmod(qb, p);
            let image: BTreeMap<Key, u64> = h.iter().cloned().collect();
            let mut keys: Vec<Key> = hm.keys().cloned().collect();
            keys.extend(image.keys().filter(|k| !hm.contains_key(*k)).cloned());
            for key in keys {
                let cur = hm.get(&key).map(|u| ueval(u, beta, p)).unwrap_or(0);
                let target = image.get(&key).copied().unwrap_or(0);
                let diff = submod(target, cur, p);
                if diff == 0 {
                    continue;
                }
                let f = mulmod(diff, inv, p);
                let entry = hm.entry(key).or_default();
                if entry.len() < q.len() {
                    entry.resize(q.len(), 0);
                }
                for (i, &qc) in q.iter().enumerate() {
                    entry[i] = addmod(entry[i], mulmod(f, qc, p), p);
                }
                *entry = utrim(std::mem::take(entry));
            }
            hm.retain(|_, u| !u.is_empty());
            *q = umul(q, &[submod(0, beta, p), 1], p);
            *npts += 1;
        }
        let (_, hm, _, npts) = interp.as_ref().unwrap();
        if *npts > bound {
            let mut hc: Vec<u64> = Vec::new();
            for u in hm.values() {
                hc = ugcd(&hc, u, p);
                if hc.len() == 1 {
                    break;
                }
            }
            let mut res: BTreeMap<Key, Vec<u64>> = BTreeMap::new();
            for (key, u) in hm {
                let u = if hc.len() > 1 {
                    udivexact(u, &hc, p)
                } else {
                    u.clone()
                };
                res.insert(*key, if c.len() > 1 { umul(&u, &c, p) } else { u });
            }
            let mut out = ungroup(&res, v);
            mp_monic(&mut out, p);
            return out;
        }
    }
}

fn reduce_mod(c: &BigInt, p: u64) -> u64 {
    let r = c.mod_floor(&BigInt::from(p));
    r.to_u64().unwrap()
}

fn permute(m: &Monomial, perm: &[usize]) -> Key {
    let mut k = [0u16; NVARS];
    for (pos, &var) in perm.iter().enumerate() {
        k[pos] = m.0[var];
    }
    k
}

fn unpermute(k: &Key, perm: &[usize]) -> Monomial {
    let mut m = [0u16; NVARS];
    for (pos, &var) in perm.iter().enumerate() {
        m[var] = k[pos];
    }
    Monomial(m)
}

/// Primitive gcd of two primitive, monomial-free, non-constant polynomials.
fn modular_gcd(a: &MPoly, b: &MPoly) -> MPoly {
    let da = a.degrees();
    let db = b.degrees();
    let mut active: Vec<usize> = (0..NVARS).filter(|&i| da[i] > 0 || db[i] > 0).collect();
    active.sort_by_key(|&i| std::cmp::Reverse(da[i].max(db[i])));
    let k = active.len();
    let mut perm = active.clone();
    for i in 0..NVARS {
        if !perm.contains(&i) {
            perm.push(i);
        }
    }
    let to_keyed = |x: &MPoly| -> Vec<(Key, BigInt)> {
        let mut v: Vec<(Key, BigInt)> = x
            .terms()
            .iter()
            .map(|(m, c)| (permute(m, &perm), c.clone()))
            .collect();
        v.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        v
    };
    let ak = to_keyed(a);
    let bk = to_keyed(b);
    let lca = ak[0].1.clone();
    let lcb = bk[0].1.clone();
    let gamma = lca.gcd(&lcb);
    let mut rng = SplitMix(0x1234_5678_9abc_def0 ^ (a.len() as u64) << 20 ^ b.len() as u64);

    let mut state: Option<(Key, BTreeMap<Key, BigInt>, BigInt)> = None;
    for &p in primes() {
        let pb = BigInt::from(p);
        if (&lca % &pb).is_zero() || (&lcb % &pb).is_zero() {
            continue;
        }
        let red = |x: &Vec<(Key, BigInt)>| -> ModPoly {
            x.iter()
                .filter_map(|(k, c)| {
                    let r = reduce_mod(c, p);
                    (r != 0).then_some((*k, r))
                })
                .collect()
        };
        let ap = red(&ak);
        let bp = red(&bk);
        let mut gp = pgcd(&ap, &bp, k, p, &mut rng);
        if mp_is_const(&gp) {
            return MPoly::one();
        }
        let gm = reduce_mod(&gamma, p);
        for t in gp.iter_mut() {
            t.1 = mulmod(t.1, gm, p);
        }
        let lead = gp[0].0;
        let combine = match &state {
            None => false,
            Some((cur, ..)) => match lead.cmp(cur) {
                Ordering::Less => false,
                Ordering::Greater => continue,
                Ordering::Equal => true,
            },
        };
        if !combine {
            let mut h = BTreeMap::new();
            for (key, c) in &gp {
                h.insert(*key, BigInt::from(*c));
            }
            state = Some((lead, h, pb));
        } else {
            let (_, h, m) = state.as_mut().unwrap();
            let minv = BigInt::from(invmod(reduce_mod(m, p), p));
            let image: BTreeMap<Key, u64> = gp.iter().cloned().collect();
            let mut keys: Vec<Key> = h.keys().cloned().collect();
            keys.extend(image.keys().filter(|k| !h.contains_key(*k)).cloned());
            for key in keys {
                let old = h.get(&key).cloned().unwrap_or_else(BigInt::zero);
                let target = BigInt::from(image.get(&key).copied().unwrap_or(0));
                let diff = (target - &old).mod_floor(&pb);
                let t = (diff * &minv).mod_floor(&pb);
                let new = old + &*m * t;
                if new.is_zero() {
                    h.remove(&key);
                } else {
                    h.insert(key, new);
                }
            }
            *m *= &pb;
        }
        let (_, h, m) = state.as_ref().unwrap();
        let half: BigInt = m / 2;
        let cand = MPoly::from_terms(h.iter().map(|(key, c)| {
            let c = if c > &half { c - m } else { c.clone() };
            (unpermute(key, &perm), c)
        }));
        let (_, cand) = cand.primitive();
        if cand.is_constant() {
            continue;
        }
        if a.div_exact(&cand).is_some() && b.div_exact(&cand).is_some() {
            return cand;
        }
    }
    panic!("modular gcd exhausted its prime table");
}

/// Gcd together with both cofactors: `(g, a/g, b/g)`.
///
/// `g` is primitive with positive leading coefficient (over the rationals the
/// integer content is a unit), so cofactors carry the integer contents.
pub fn gcd_cofactors(a: &MPoly, b: &MPoly) -> (MPoly, MPoly, MPoly) {
    if a.is_zero() && b.is_zero() {
        return (MPoly::zero(), MPoly::zero(), MPoly::zero());
    }
    if a.is_zero() {
        let (c, g) = b.primitive();
        return (g, MPoly::zero(), MPoly::constant(c));
    }
    if b.is_zero() {
        let (c, g) = a.primitive();
        return (g, MPoly::constant(c), MPoly::zero());
    }
    let ma = a.min_monomial();
    let mb = b.min_monomial();
    let mg = ma.gcd(&mb);
    let a1 = a.div_monomial(&ma);
    let b1 = b.div_monomial(&mb);
    let (ca, a2) = a1.primitive();
    let (cb, b2) = b1.primitive();
    let core = if a2.is_constant() || b2.is_constant() {
        MPoly::one()
    } else if a2 == b2 {
        a2.clone()
    } else {
        modular_gcd(&a2, &b2)
    };
    let finish = |x2: &MPoly, cx: &BigInt, mx: &Monomial| -> MPoly {
        let q = if core.is_one() {
            x2.clone()
        } else {
            x2.div_exact(&core).expect("gcd divides input")
        };
        q.scale(cx).mul_monomial(&mg.quotient_of(mx))
    };
    let ga = finish(&a2, &ca, &ma);
    let gb = finish(&b2, &cb, &mb);
    (core.mul_monomial(&mg), ga, gb)
}

/// Greatest common divisor, primitive with positive leading coefficient.
pub fn gcd(a: &MPoly, b: &MPoly) -> MPoly {
    if !a.is_zero() && !b.is_zero() && (a.is_monomial_term() || b.is_monomial_term()) {
        return MPoly::monomial(a.min_monomial().gcd(&b.min_monomial()));
    }
    gcd_cofactors(a, b).0
}

/// Integer gcd of two coefficients, helper used by rational-function code.
pub(crate) fn int_gcd(a: &BigInt, b: &BigInt) -> BigInt {
    let g = a.gcd(b);
    if g.is_zero() {
        BigInt::one()
    } else {
        g
    }
}
