use std::collections::BTreeMap;

use super::{LieAlgebra, LieError};
use crate::exactmath::RatFunc;

/// Names accepted by [`catalog`].
pub const CATALOG_NAMES: &[&str] = &[
    "g_tau", "u", "g2+g2", "g4_1", "g4_2", "g4_9", "g4_10", "g4_11", "h3", "h3+a1", "a_n",
];

fn param(params: &BTreeMap<String, RatFunc>, name: &str) -> RatFunc {
    params.get(name).cloned().unwrap_or_else(|| RatFunc::var(name))
}

fn int(n: i64) -> RatFunc {
    RatFunc::int(n)
}

/// Coframe terms `(k, i, j, a)` meaning `dφ^k ∋ a φ^i∧φ^j`, 1-based.
fn coframe(dim: usize, terms: Vec<(usize, usize, usize, RatFunc)>) -> Result<LieAlgebra, LieError> {
    let t: Vec<_> = terms.into_iter().map(|(k, i, j, a)| (k - 1, i - 1, j - 1, a)).collect();
    LieAlgebra::from_coframe(dim, &t)
}

/// The solvable algebra `g_τ`: `[f1,f2] = f2 - τf3`, `[f1,f3] = τf2 + f3`,
/// `[f1,f4] = 2f4`, `[f2,f3] = -f4`.
pub fn g_tau(tau: RatFunc) -> LieAlgebra {
    LieAlgebra::from_brackets(
        4,
        &[
            (0, 1, vec![(1, int(1)), (2, -&tau)]),
            (0, 2, vec![(1, tau.clone()), (2, int(1))]),
            (0, 3, vec![(3, int(2))]),
            (1, 2, vec![(3, int(-1))]),
        ],
    )
    .expect("indices in range")
}

/// Looks up a named algebra. Missing parameters stay symbolic under their own name.
pub fn catalog(name: &str, params: &BTreeMap<String, RatFunc>) -> Result<LieAlgebra, LieError> {
    let alg = match name {
        "g_tau" => g_tau(param(params, "tau")),
        "u" => {
            // <f0> ⊕ g_0, basis (f0, f1, f2, f3, f4)
            let g0 = g_tau(RatFunc::zero());
            let mut br: Vec<(usize, usize, Vec<(usize, RatFunc)>)> = Vec::new();
            for i in 0..4 {
                for j in i + 1..4 {
                    let out: Vec<_> = (0..4)
                        .filter(|&k| !g0.get(i, j, k).is_zero())
                        .map(|k| (k + 1, g0.get(i, j, k).clone()))
                        .collect();
                    if !out.is_empty() {
                        br.push((i + 1, j + 1, out));
                    }
                }
            }
            br.push((0, 2, vec![(3, int(-1))]));
            br.push((0, 3, vec![(2, int(1))]));
            LieAlgebra::from_brackets(5, &br)?
        }
        "g2+g2" => coframe(4, vec![(3, 1, 3, int(1)), (4, 2, 4, int(1))])?,
        "g4_1" => coframe(4, vec![(3, 1, 3, int(1)), (4, 1, 4, int(1)), (4, 2, 3, int(1))])?,
        "g4_2" => coframe(
            4,
            vec![
                (3, 1, 3, int(1)),
                (3, 2, 4, int(1)),
                (4, 1, 4, int(1)),
                (4, 2, 3, int(-1)),
            ],
        )?,
        "g4_9" => {
            let a = param(params, "alpha");
            coframe(
                4,
                vec![
                    (2, 1, 2, &int(1) - &a),
                    (3, 1, 3, int(-1)),
                    (4, 1, 4, -a),
                    (4, 2, 3, int(-1)),
                ],
            )?
        }
        "g4_10" => coframe(
            4,
            vec![
                (2, 1, 2, int(1)),
                (3, 1, 2, int(1)),
                (3, 1, 3, int(1)),
                (4, 2, 3, int(1)),
                (4, 1, 4, int(2)),
            ],
        )?,
        "g4_11" => {
            let b = param(params, "beta");
            coframe(
                4,
                vec![
                    (2, 1, 2, b.clone()),
                    (2, 1, 3, int(1)),
                    (3, 1, 2, int(-1)),
                    (3, 1, 3, b.clone()),
                    (4, 2, 3, int(-1)),
                    (4, 1, 4, &int(2) * &b),
                ],
            )?
        }
        "h3" => LieAlgebra::from_brackets(3, &[(0, 1, vec![(2, int(1))])])?,
        "h3+a1" => LieAlgebra::from_brackets(4, &[(0, 1, vec![(2, int(1))])])?,
        "a_n" => {
            let n = params
                .get("n")
                .and_then(|v| v.constant_value())
                .filter(|r| r.is_integer() && r.is_positive())
                .ok_or_else(|| LieError::BadParameter("a_n needs a positive integer n".into()))?;
            let n: usize = n
                .numer()
                .try_into()
                .map_err(|_| LieError::BadParameter("n too large".into()))?;
            LieAlgebra::abelian(n)
        }
        other => return Err(LieError::UnknownAlgebra(other.to_string())),
    };
    Ok(alg)
}
