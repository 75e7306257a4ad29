//! Bilinear forms: exact diagonalization, signature and Lagrangian subspaces.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::echelon::{kernel, rank};
use super::matrix::RationalMatrix;
use super::Rational;
use crate::error::{Error, Result};

pub const DEFAULT_HEIGHT_BOUND: u32 = 64;

/// Congruence diagonalization `Pᵀ M P = diag(d)` by symmetric pivoting.
/// When every remaining diagonal entry vanishes, `e_i ← e_i + e_j` for some
/// `M_ij ≠ 0` creates a nonzero pivot.
pub fn diagonalize(m: &RationalMatrix) -> Result<(RationalMatrix, Vec<Rational>)> {
    if !m.is_square() || !m.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let n = m.nrows();
    let mut a = m.to_dense();
    let mut p = RationalMatrix::identity(n).to_dense();
    let mut active: Vec<usize> = (0..n).collect();
    while !active.is_empty() {
        let piv = active.iter().copied().find(|&i| !a[i][i].is_zero());
        let piv = match piv {
            Some(i) => i,
            None => {
                let pair = active
                    .iter()
                    .flat_map(|&i| active.iter().map(move |&j| (i, j)))
                    .find(|&(i, j)| i != j && !a[i][j].is_zero());
                let Some((i, j)) = pair else {
                    break;
                };
                // column and row operation: e_i += e_j
                for r in 0..n {
                    let v = a[r][j].clone();
                    a[r][i] += v;
                }
                for c in 0..n {
                    let v = a[j][c].clone();
                    a[i][c] += v;
                }
                for r in 0..n {
                    let v = p[r][j].clone();
                    p[r][i] += v;
                }
                i
            }
        };
        let d = a[piv][piv].clone();
        for &j in &active {
            if j == piv || a[piv][j].is_zero() {
                continue;
            }
            let c = &a[piv][j] / &d;
            // e_j ← e_j − c e_piv
            for r in 0..n {
                let v = &a[r][piv] * &c;
                a[r][j] -= v;
            }
            for col in 0..n {
                let v = &a[piv][col] * &c;
                a[j][col] -= v;
            }
            for r in 0..n {
                let v = &p[r][piv] * &c;
                p[r][j] -= v;
            }
        }
        active.retain(|&i| i != piv);
    }
    let pm = RationalMatrix::from_dense(&p);
    let dm = pm.transpose().mul(m).mul(&pm);
    let diag = (0..n).map(|i| dm.get(i, i)).collect();
    Ok((pm, diag))
}

/// `(p, q)`: numbers of positive and negative directions.
pub fn signature(m: &RationalMatrix) -> Result<(usize, usize)> {
    let (_, d) = diagonalize(m)?;
    let p = d.iter().filter(|x| x.is_positive()).count();
    let q = d.iter().filter(|x| x.is_negative()).count();
    Ok((p, q))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LagrangianOutcome {
    /// Columns span a Lagrangian subspace.
    Found(RationalMatrix),
    /// Symmetric form of nonzero signature.
    NoneExists { positive: usize, negative: usize },
    /// Signature zero, but no rational witness within the height bound.
    RealOnly,
}

/// Searches for a Lagrangian subspace of a nondegenerate symmetric or
/// antisymmetric form.
pub fn lagrangian_search(m: &RationalMatrix, height_bound: u32) -> Result<LagrangianOutcome> {
    if !m.is_square() {
        return Err(Error::Shape("form must be square".into()));
    }
    let n = m.nrows();
    let r = rank(m);
    if r < n {
        return Err(Error::Degenerate { rank: r, dim: n });
    }
    if m.is_antisymmetric() {
        if n % 2 == 1 {
            return Err(Error::OddDimension(n));
        }
        return Ok(LagrangianOutcome::Found(symplectic_lagrangian(m)));
    }
    if !m.is_symmetric() {
        return Err(Error::NoSymmetry);
    }
    let (p, q) = signature(m)?;
    if p != q {
        return Ok(LagrangianOutcome::NoneExists { positive: p, negative: q });
    }
    let mut basis = RationalMatrix::identity(n);
    let mut found: Vec<Vec<Rational>> = Vec::new();
    while basis.ncols() > 0 {
        let restricted = basis.transpose().mul(m).mul(&basis);
        let v = match (0..basis.ncols()).find(|&i| restricted.get(i, i).is_zero()) {
            Some(i) => basis.column(i),
            None => {
                if let Some(x) = isotropic_in_plane(&restricted) {
                    let v = basis.mul_vec(&x);
                    let mv = m.mul_vec(&v);
                    let w = basis.columns().into_iter().find(|c| !dot(&mv, c).is_zero()).expect("nondegenerate restriction");
                    let mw = m.mul_vec(&w);
                    basis = basis.mul(&kernel(&RationalMatrix::from_dense(&[mv, mw]).mul(&basis)));
                    found.push(v);
                    continue;
                }
                let (pm, d) = diagonalize(&restricted)?;
                let Some(x) = isotropic_in_diagonal(&d, height_bound) else {
                    return Ok(LagrangianOutcome::RealOnly);
                };
                basis.mul_vec(&pm.mul_vec(&x))
            }
        };
        let mv = m.mul_vec(&v);
        // a partner w in the current subspace with ⟨v, w⟩ ≠ 0
        let cols = basis.columns();
        let w = cols
            .iter()
            .find(|c| !dot(&mv, c).is_zero())
            .cloned()
            .expect("nondegenerate restriction");
        let mw = m.mul_vec(&w);
        let constraints = RationalMatrix::from_dense(&[mv.clone(), mw]).mul(&basis);
        let k = kernel(&constraints);
        basis = basis.mul(&k);
        found.push(v);
    }
    Ok(LagrangianOutcome::Found(RationalMatrix::from_columns(n, &found)))
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

fn symplectic_lagrangian(m: &RationalMatrix) -> RationalMatrix {
    let n = m.nrows();
    let form = |u: &[Rational], v: &[Rational]| dot(u, &m.mul_vec(v));
    let mut pool: Vec<Vec<Rational>> = RationalMatrix::identity(n).columns();
    let mut lag = Vec::new();
    while let Some(e) = pool.first().cloned() {
        pool.remove(0);
        let wi = pool.iter().position(|w| !form(&e, w).is_zero()).expect("nondegenerate");
        let w = pool.remove(wi);
        let ew = form(&e, &w);
        for u in pool.iter_mut() {
            let c1 = form(u, &w) / &ew;
            let c2 = form(u, &e) / &ew;
            for i in 0..n {
                let t = &c1 * &e[i] - &c2 * &w[i];
                u[i] -= t;
            }
        }
        lag.push(e);
    }
    RationalMatrix::from_columns(n, &lag)
}

fn rational_sqrt(v: &Rational) -> Option<Rational> {
    Some(Rational::new(exact_sqrt(v.numer())?, exact_sqrt(v.denom())?))
}

/// An isotropic vector in a plane `⟨u, v⟩` of small integer vectors: with
/// `a = q(u)`, `b = β(u, v)`, `c = q(v)`, `q(u + t v) = 0` has a rational
/// root exactly when `b² - ac` is a rational square.
fn isotropic_in_plane(m: &RationalMatrix) -> Option<Vec<Rational>> {
    let n = m.nrows();
    let max_support = if n > 12 { 2 } else { 3 };
    let mut pool: Vec<Vec<Rational>> = Vec::new();
    for support in 1..=n.min(max_support) {
        for idx in subsets(n, support) {
            // first entry +1, the others ±1
            for signs in 0..1u32 << (support - 1) {
                let mut u = vec![Rational::zero(); n];
                for (k, &i) in idx.iter().enumerate() {
                    let neg = k > 0 && signs >> (k - 1) & 1 == 1;
                    u[i] = Rational::from_integer(BigInt::from(if neg { -1 } else { 1 }));
                }
                pool.push(u);
            }
        }
    }
    let images: Vec<Vec<Rational>> = pool.iter().map(|u| m.mul_vec(u)).collect();
    for i in 0..pool.len() {
        let a = dot(&pool[i], &images[i]);
        for j in i + 1..pool.len() {
            let b = dot(&pool[i], &images[j]);
            let c = dot(&pool[j], &images[j]);
            if c.is_zero() {
                return Some(pool[j].clone());
            }
            let Some(r) = rational_sqrt(&(&b * &b - &a * &c)) else { continue };
            // c t² + 2 b t + a = 0
            let t = (-&b + r) / &c;
            let x: Vec<Rational> = pool[i].iter().zip(&pool[j]).map(|(p, q)| p + &t * q).collect();
            if x.iter().any(|v| !v.is_zero()) {
                return Some(x);
            }
        }
    }
    None
}

fn exact_sqrt(v: &BigInt) -> Option<BigInt> {
    if v.is_negative() {
        return None;
    }
    let s = v.sqrt();
    if &s * &s == *v {
        Some(s)
    } else {
        None
    }
}

/// Nonzero rational `x` with `Σ d_i x_i² = 0`. Vectors are tried by support
/// size; the last coordinate is solved exactly over ℚ, the others range over
/// integers of absolute value at most `bound`.
fn isotropic_in_diagonal(d: &[Rational], bound: u32) -> Option<Vec<Rational>> {
    let n = d.len();
    if let Some(i) = d.iter().position(|x| x.is_zero()) {
        let mut x = vec![Rational::zero(); n];
        x[i] = Rational::one();
        return Some(x);
    }
    // integer weights with the same isotropic vectors
    let l = d.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let w: Vec<BigInt> = d.iter().map(|x| x.numer() * (&l / x.denom())).collect();
    let max_support = n.min(4);
    for support in 2..=max_support {
        for idx in subsets(n, support) {
            let (last, free) = idx.split_last().unwrap();
            let signs_mixed = idx.iter().any(|&i| w[i].is_positive()) && idx.iter().any(|&i| w[i].is_negative());
            if !signs_mixed {
                continue;
            }
            let mut coords = vec![1i64; free.len()];
            if let Some(xs) = search_free(&w, free, *last, &mut coords, 0, bound as i64) {
                let mut x = vec![Rational::zero(); n];
                for (k, &i) in free.iter().enumerate() {
                    x[i] = Rational::from_integer(BigInt::from(xs.0[k]));
                }
                x[*last] = xs.1;
                return Some(x);
            }
        }
    }
    None
}

fn search_free(
    w: &[BigInt],
    free: &[usize],
    last: usize,
    coords: &mut Vec<i64>,
    pos: usize,
    bound: i64,
) -> Option<(Vec<i64>, Rational)> {
    if pos == free.len() {
        let s: BigInt = free.iter().zip(coords.iter()).map(|(&i, &c)| &w[i] * BigInt::from(c * c)).sum();
        // w_last * y² = −s
        let t = -s;
        if t.is_zero() {
            return None;
        }
        // y = √(t·w_last) / w_last
        let root = exact_sqrt(&(&t * &w[last]))?;
        return Some((coords.clone(), Rational::new(root, w[last].clone())));
    }
    // the first free coordinate is normalized to be positive
    let range: Vec<i64> = if pos == 0 { (1..=bound).collect() } else { (-bound..=bound).filter(|&c| c != 0).collect() };
    for c in range {
        coords[pos] = c;
        if let Some(r) = search_free(w, free, last, coords, pos + 1, bound) {
            return Some(r);
        }
    }
    None
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_lagrangian(m: &RationalMatrix, l: &RationalMatrix) {
        assert_eq!(l.ncols() * 2, m.nrows());
        assert_eq!(rank(l), l.ncols());
        assert!(l.transpose().mul(m).mul(l).is_zero());
    }

    #[test]
    fn signatures() {
        assert_eq!(signature(&RationalMatrix::from_i64(&[&[1]])).unwrap(), (1, 0));
        assert_eq!(signature(&RationalMatrix::from_i64(&[&[0, 1], &[1, 0]])).unwrap(), (1, 1));
        assert_eq!(signature(&RationalMatrix::from_i64(&[&[2, 1, 0], &[1, 2, 0], &[0, 0, -3]])).unwrap(), (2, 1));
        assert!(signature(&RationalMatrix::from_i64(&[&[0, 1], &[0, 0]])).is_err());
    }

    #[test]
    fn diagonalization_is_congruence() {
        let m = RationalMatrix::from_i64(&[&[0, 1, 2], &[1, 0, 3], &[2, 3, 0]]);
        let (p, d) = diagonalize(&m).unwrap();
        let dm = p.transpose().mul(&m).mul(&p);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(dm.get(i, j), if i == j { d[i].clone() } else { Rational::zero() });
            }
        }
        assert_eq!(rank(&p), 3);
    }

    #[test]
    fn lagrangians() {
        let symp = RationalMatrix::from_i64(&[&[0, 1], &[-1, 0]]);
        match lagrangian_search(&symp, DEFAULT_HEIGHT_BOUND).unwrap() {
            LagrangianOutcome::Found(l) => assert_lagrangian(&symp, &l),
            other => panic!("{other:?}"),
        }
        let hyp = RationalMatrix::from_i64(&[&[0, 1], &[1, 0]]);
        match lagrangian_search(&hyp, DEFAULT_HEIGHT_BOUND).unwrap() {
            LagrangianOutcome::Found(l) => {
                assert_lagrangian(&hyp, &l);
                assert_eq!(l, RationalMatrix::from_i64(&[&[1], &[0]]));
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(
            lagrangian_search(&RationalMatrix::from_i64(&[&[1]]), DEFAULT_HEIGHT_BOUND).unwrap(),
            LagrangianOutcome::NoneExists { positive: 1, negative: 0 }
        );
        let split = RationalMatrix::from_i64(&[&[1, 0, 0, 0], &[0, -1, 0, 0], &[0, 0, 2, 0], &[0, 0, 0, -2]]);
        match lagrangian_search(&split, DEFAULT_HEIGHT_BOUND).unwrap() {
            LagrangianOutcome::Found(l) => assert_lagrangian(&split, &l),
            other => panic!("{other:?}"),
        }
        let no_rational = RationalMatrix::from_i64(&[&[1, 0], &[0, -2]]);
        assert_eq!(lagrangian_search(&no_rational, DEFAULT_HEIGHT_BOUND).unwrap(), LagrangianOutcome::RealOnly);
    }
}
