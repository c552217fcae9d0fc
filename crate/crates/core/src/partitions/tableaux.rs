use std::collections::BTreeSet;

use super::{enumerate_chains, Cell, Partition};
use crate::error::{Error, Result};

/// A filling of a diagram, weakly decreasing along rows and strictly
/// decreasing down columns.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ReverseTableau {
    pub shape: Partition,
    /// `rows[i][j]` is the entry of box `(i+1, j+1)`.
    pub rows: Vec<Vec<u32>>,
}

impl ReverseTableau {
    pub fn get(&self, c: Cell) -> u32 {
        self.rows[c.row - 1][c.col - 1]
    }

    pub fn first_row(&self) -> &[u32] {
        self.rows.first().map(|r| r.as_slice()).unwrap_or(&[])
    }

    /// Checks the monotonicity rules and that entries lie in `[n]`.
    pub fn is_valid(&self, n: usize) -> bool {
        self.shape.cells().all(|c| {
            let v = self.get(c);
            (1..=n as u32).contains(&v)
                && (c.col == 1 || self.rows[c.row - 1][c.col - 2] >= v)
                && (c.row == 1 || self.rows[c.row - 2][c.col - 1] > v)
        })
    }

    /// The chain `λ^(0) ⊇ λ^(1) ⊇ … ⊇ λ^(n)` with `λ^(i)` the boxes holding entries above `i`.
    pub fn strip_chain(&self, n: usize) -> Vec<Partition> {
        (0..=n as u32)
            .map(|i| {
                let parts = (0..self.shape.n())
                    .map(|r| {
                        self.rows
                            .get(r)
                            .map(|row| row.iter().filter(|&&v| v > i).count() as u32)
                            .unwrap_or(0)
                    })
                    .collect();
                Partition::new(parts).expect("levels of a reverse tableau are partitions")
            })
            .collect()
    }
}

fn check_rows(shape: &Partition, n: usize) -> Result<()> {
    if shape.length() > n {
        Err(Error::TooManyRows {
            rows: shape.length(),
            n,
        })
    } else {
        Ok(())
    }
}

/// Visits every reverse tableau of `shape` with entries in `[n]` in
/// row-major backtracking order (entries tried in increasing order).
pub fn for_each_rt<F: FnMut(&ReverseTableau)>(shape: &Partition, n: usize, mut f: F) -> Result<()> {
    check_rows(shape, n)?;
    rt_search(shape, n, None, &mut |t| {
        f(t);
        true
    });
    Ok(())
}

/// Backtracking core; `first_row_cap[j]` bounds the entry at `(1, j+1)`.
/// The visitor returns `false` to stop the search.
fn rt_search(
    shape: &Partition,
    n: usize,
    first_row_cap: Option<&[u32]>,
    visit: &mut dyn FnMut(&ReverseTableau) -> bool,
) {
    let cells: Vec<Cell> = shape.cells().collect();
    let mut t = ReverseTableau {
        shape: shape.clone(),
        rows: shape
            .parts()
            .iter()
            .take(shape.length())
            .map(|&p| vec![0; p as usize])
            .collect(),
    };
    fn rec(
        k: usize,
        cells: &[Cell],
        t: &mut ReverseTableau,
        n: u32,
        cap: Option<&[u32]>,
        visit: &mut dyn FnMut(&ReverseTableau) -> bool,
    ) -> bool {
        if k == cells.len() {
            return visit(t);
        }
        let c = cells[k];
        let (i, j) = (c.row - 1, c.col - 1);
        let mut hi = n;
        if j > 0 {
            hi = hi.min(t.rows[i][j - 1]);
        }
        if i > 0 {
            hi = hi.min(t.rows[i - 1][j] - 1);
        }
        if i == 0 {
            if let Some(cap) = cap {
                hi = hi.min(cap.get(j).copied().unwrap_or(0));
            }
        }
        let lo = t.shape.col(c.col) - c.row as u32 + 1;
        for v in lo..=hi {
            t.rows[i][j] = v;
            if !rec(k + 1, cells, t, n, cap, visit) {
                return false;
            }
        }
        true
    }
    rec(0, &cells, &mut t, n as u32, first_row_cap, visit);
}

pub fn enumerate_rt(shape: &Partition, n: usize) -> Result<Vec<ReverseTableau>> {
    let mut out = Vec::new();
    for_each_rt(shape, n, |t| out.push(t.clone()))?;
    Ok(out)
}

/// The reverse tableau with `T(i,j) = λ'_j - i + 1`; its first row is `λ'`.
pub fn distinguished_rt(shape: &Partition) -> ReverseTableau {
    let rows = (1..=shape.length())
        .map(|i| {
            (1..=shape.row(i) as usize)
                .map(|j| shape.col(j) - i as u32 + 1)
                .collect()
        })
        .collect();
    ReverseTableau {
        shape: shape.clone(),
        rows,
    }
}

pub fn is_horizontal_strip(mu: &Partition, nu: &Partition) -> bool {
    mu.n() == nu.n()
        && mu.contains_unchecked(nu)
        && (0..mu.n()).all(|i| i + 1 == mu.n() || nu.parts()[i] >= mu.parts()[i + 1])
}

/// Boxes of `μ` in rows (`r`) and columns (`c`) meeting the strip `μ/ν`, and `r ∖ c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StripSets {
    pub r: BTreeSet<Cell>,
    pub c: BTreeSet<Cell>,
    pub r_minus_c: BTreeSet<Cell>,
}

pub fn strip_sets(mu: &Partition, nu: &Partition) -> Result<StripSets> {
    if mu.n() != nu.n() {
        return Err(Error::LengthMismatch(mu.n(), nu.n()));
    }
    if !is_horizontal_strip(mu, nu) {
        return Err(Error::NotHorizontalStrip);
    }
    let strip: Vec<Cell> = mu.cells().filter(|c| !nu.contains_cell(*c)).collect();
    let rows: BTreeSet<usize> = strip.iter().map(|c| c.row).collect();
    let cols: BTreeSet<usize> = strip.iter().map(|c| c.col).collect();
    let r: BTreeSet<Cell> = mu.cells().filter(|c| rows.contains(&c.row)).collect();
    let c: BTreeSet<Cell> = mu.cells().filter(|c| cols.contains(&c.col)).collect();
    let r_minus_c = r.difference(&c).copied().collect();
    Ok(StripSets { r, c, r_minus_c })
}

/// A reverse tableau with barred boxes listed in increasing column order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BarredTableau {
    pub base: ReverseTableau,
    pub barred: Vec<Cell>,
}

/// Boxes sorted by `<_C`: column first, then bottom to top.
fn column_order(shape: &Partition) -> Vec<Cell> {
    let mut cells: Vec<Cell> = shape.cells().collect();
    cells.sort_by(|a, b| a.col.cmp(&b.col).then(b.row.cmp(&a.row)));
    cells
}

/// Visits each way of choosing boxes `s_1 <_C … <_C s_k` with `T(s_i) = word[i]`.
fn bar_choices(
    t: &ReverseTableau,
    order: &[Cell],
    word: &[u32],
    visit: &mut dyn FnMut(Vec<Cell>) -> bool,
) -> bool {
    fn rec(
        t: &ReverseTableau,
        order: &[Cell],
        start: usize,
        word: &[u32],
        chosen: &mut Vec<Cell>,
        visit: &mut dyn FnMut(Vec<Cell>) -> bool,
    ) -> bool {
        if chosen.len() == word.len() {
            return visit(chosen.clone());
        }
        let want = word[chosen.len()];
        let remaining = word.len() - chosen.len();
        for idx in start..order.len() {
            if order.len() - idx < remaining {
                break;
            }
            if t.get(order[idx]) == want {
                chosen.push(order[idx]);
                let go_on = rec(t, order, idx + 1, word, chosen, visit);
                chosen.pop();
                if !go_on {
                    return false;
                }
            }
        }
        true
    }
    rec(t, order, 0, word, &mut Vec::new(), visit)
}

fn molev_search(
    lambda: &Partition,
    mu: &Partition,
    nu: &Partition,
    n: usize,
    visit: &mut dyn FnMut(BarredTableau) -> bool,
) -> Result<()> {
    if lambda.n() != mu.n() || lambda.n() != nu.n() {
        return Err(Error::LengthMismatch(
            lambda.n(),
            if lambda.n() != mu.n() { mu.n() } else { nu.n() },
        ));
    }
    if nu.length() > n {
        return Ok(());
    }
    let cap = lambda.conjugate();
    let order = column_order(nu);
    for chain in enumerate_chains(lambda, mu)? {
        let word = chain.yamanouchi();
        if word.len() > order.len() {
            continue;
        }
        let mut stop = false;
        rt_search(nu, n, Some(&cap), &mut |t| {
            let go_on = bar_choices(t, &order, &word, &mut |barred| {
                visit(BarredTableau {
                    base: t.clone(),
                    barred,
                })
            });
            stop = !go_on;
            go_on
        });
        if stop {
            break;
        }
    }
    Ok(())
}

/// All Molev tableaux of type `(λ, μ, ν)`: `λ`-bounded barred tableaux of
/// shape `ν` whose bars spell the Yamanouchi word of some chain from `λ` to `μ`.
pub fn enumerate_molev(
    lambda: &Partition,
    mu: &Partition,
    nu: &Partition,
    n: usize,
) -> Result<Vec<BarredTableau>> {
    let mut out = Vec::new();
    molev_search(lambda, mu, nu, n, &mut |b| {
        out.push(b);
        true
    })?;
    Ok(out)
}

pub fn molev_exists(lambda: &Partition, mu: &Partition, nu: &Partition, n: usize) -> Result<bool> {
    let mut found = false;
    molev_search(lambda, mu, nu, n, &mut |_| {
        found = true;
        false
    })?;
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> Partition {
        Partition::parse(s, n).unwrap()
    }

    #[test]
    fn distinguished_first_row_is_conjugate() {
        let t = distinguished_rt(&p("[5,5,3,1,1]", 5));
        assert_eq!(t.first_row(), &[5, 3, 3, 2, 2]);
        assert!(t.is_valid(5));
    }

    #[test]
    fn small_rt_counts() {
        assert_eq!(enumerate_rt(&p("[1]", 2), 2).unwrap().len(), 2);
        assert_eq!(enumerate_rt(&p("[1,1]", 2), 2).unwrap().len(), 1);
        assert_eq!(enumerate_rt(&p("[2]", 2), 2).unwrap().len(), 3);
        assert!(matches!(
            enumerate_rt(&p("[1,1,1]", 3), 2),
            Err(Error::TooManyRows { .. })
        ));
    }

    #[test]
    fn strip_set_examples() {
        let s = strip_sets(&p("[2,1]", 2), &p("[1,1]", 2)).unwrap();
        assert_eq!(
            s.r,
            [Cell::new(1, 1), Cell::new(1, 2)].into_iter().collect()
        );
        assert_eq!(s.c, [Cell::new(1, 2)].into_iter().collect());
        assert_eq!(s.r_minus_c, [Cell::new(1, 1)].into_iter().collect());
        let e = strip_sets(&p("[2,1]", 2), &p("[2,1]", 2)).unwrap();
        assert!(e.r.is_empty() && e.c.is_empty() && e.r_minus_c.is_empty());
        let v = strip_sets(&p("[2,2]", 2), &p("[2,1]", 2)).unwrap();
        assert_eq!(
            v.c,
            [Cell::new(1, 2), Cell::new(2, 2)].into_iter().collect()
        );
        assert_eq!(
            strip_sets(&p("[2,2]", 2), &p("[1]", 2)),
            Err(Error::NotHorizontalStrip)
        );
    }

    #[test]
    fn unbounded_barred_tableau_is_excluded() {
        // A barred tableau of shape (5,5,3) for the word 2321 whose first row (5,5,4,2,2)
        // exceeds the conjugate of (4,3,1).
        let lambda = p("[4,3,1]", 5);
        let rows = vec![vec![5, 5, 4, 2, 2], vec![4, 3, 2, 1, 1], vec![2, 1, 1]];
        let t = ReverseTableau {
            shape: p("[5,5,3]", 5),
            rows,
        };
        assert!(t.is_valid(5));
        let order = column_order(&t.shape);
        let mut found = Vec::new();
        bar_choices(&t, &order, &[2, 3, 2, 1], &mut |b| {
            found.push(b);
            true
        });
        assert!(found.contains(&vec![
            Cell::new(3, 1),
            Cell::new(2, 2),
            Cell::new(1, 4),
            Cell::new(2, 5)
        ]));
        let all = enumerate_molev(&lambda, &p("[3,1]", 5), &t.shape, 5).unwrap();
        assert!(all.iter().all(|b| b.base != t));
    }

    #[test]
    fn equal_outer_and_inner_gives_unbarred_distinguished() {
        let lambda = p("[2,1]", 2);
        let nu = p("[1,1]", 2);
        let all = enumerate_molev(&lambda, &lambda, &nu, 2).unwrap();
        assert!(all
            .iter()
            .any(|b| b.barred.is_empty() && b.base == distinguished_rt(&nu)));
        assert!(enumerate_molev(&p("[1,1]", 2), &p("[2]", 2), &nu, 2)
            .unwrap()
            .is_empty());
    }
}
