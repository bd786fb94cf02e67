//! Brute-force Čech complex of S/I at a single fine degree, written without
//! the library's stabilization shortcuts: a monomial `x^c` survives in the
//! localization `(S/I)_{x_σ}` iff `c` is nonnegative off `σ` and every
//! generator of I exceeds `c` in some coordinate off `σ`.

/// Rank over Q by fraction-free elimination in i128.
pub fn rank(mut rows: Vec<Vec<i128>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    let mut prev = 1i128;
    for col in 0..ncols {
        let Some(pivot) = (r..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(r, pivot);
        for i in r + 1..rows.len() {
            for j in col + 1..ncols {
                rows[i][j] = (rows[r][col] * rows[i][j] - rows[i][col] * rows[r][j]) / prev;
            }
            rows[i][col] = 0;
        }
        prev = rows[r][col];
        r += 1;
    }
    r
}

fn present(gens: &[Vec<u32>], c: &[i64], inverted: &[bool]) -> bool {
    let off = |v: usize| !inverted[v];
    (0..c.len()).filter(|&v| off(v)).all(|v| c[v] >= 0)
        && gens
            .iter()
            .all(|g| (0..c.len()).any(|v| off(v) && g[v] as i64 > c[v]))
}

/// `dim H^i_Z(S/I)_c` for `i = 0..=|Z|`.
pub fn cech_dims(gens: &[Vec<u32>], axis: &[usize], c: &[i64]) -> Vec<usize> {
    let k = axis.len();
    let nvars = c.len();
    let terms: Vec<Vec<usize>> = (0..=k)
        .map(|size| {
            (0u32..1 << k)
                .filter(|mask| mask.count_ones() as usize == size)
                .filter(|&mask| {
                    let mut inv = vec![false; nvars];
                    for (p, &v) in axis.iter().enumerate() {
                        inv[v] = mask >> p & 1 == 1;
                    }
                    present(gens, c, &inv)
                })
                .map(|m| m as usize)
                .collect()
        })
        .collect();
    // d^j : C^j -> C^{j+1}
    let ranks: Vec<usize> = (0..k)
        .map(|j| {
            let rows: Vec<Vec<i128>> = terms[j + 1]
                .iter()
                .map(|&tgt| {
                    terms[j]
                        .iter()
                        .map(|&src| {
                            if src & !tgt != 0 || (tgt & !src).count_ones() != 1 {
                                return 0;
                            }
                            let p = (tgt & !src).trailing_zeros();
                            let below = (src & ((1 << p) - 1)).count_ones();
                            if below % 2 == 0 {
                                1
                            } else {
                                -1
                            }
                        })
                        .collect()
                })
                .collect();
            if rows.is_empty() || terms[j].is_empty() {
                0
            } else {
                rank(rows)
            }
        })
        .collect();
    (0..=k)
        .map(|i| {
            let out = if i < k { ranks[i] } else { 0 };
            let inc = if i > 0 { ranks[i - 1] } else { 0 };
            terms[i].len() - out - inc
        })
        .collect()
}

/// All fine degrees of the scan box: axis coordinates in `[-2, λ+1]`,
/// others in `[0, λ+1]`, which covers every stabilization class.
pub fn scan_box(gens: &[Vec<u32>], nvars: usize, axis: &[usize]) -> Vec<Vec<i64>> {
    let lambda: Vec<i64> = (0..nvars)
        .map(|v| gens.iter().map(|g| g[v] as i64).max().unwrap_or(0))
        .collect();
    let mut out = vec![vec![]];
    for v in 0..nvars {
        let lo = if axis.contains(&v) { -2 } else { 0 };
        out = out
            .into_iter()
            .flat_map(|p: Vec<i64>| {
                (lo..=lambda[v] + 1).map(move |e| {
                    let mut q = p.clone();
                    q.push(e);
                    q
                })
            })
            .collect();
    }
    out
}

/// Hand-checked values; panics if the oracle itself is off.
pub fn self_check() {
    // K[y1,y2]: only H^2 survives, at (-1,-1)
    assert_eq!(cech_dims(&[], &[0, 1], &[-1, -1]), vec![0, 0, 1]);
    assert_eq!(cech_dims(&[], &[0, 1], &[0, 0]), vec![0, 0, 0]);
    // K[y1,y2]/(y1,y2) = K is all torsion
    assert_eq!(cech_dims(&[vec![1, 0], vec![0, 1]], &[0, 1], &[0, 0]), vec![1, 0, 0]);
    // K[y1,y2]/(y1*y2): H^1 at (-1, 0)
    assert_eq!(cech_dims(&[vec![1, 1]], &[0, 1], &[-1, 0]), vec![0, 1, 0]);
    assert_eq!(rank(vec![vec![1, 1], vec![1, 1]]), 1);
    assert_eq!(rank(vec![vec![0, 2, 4], vec![1, 1, 1], vec![1, 3, 5]]), 2);
}
