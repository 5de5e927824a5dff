//! Printed data (weight tables, substitutions, rally displays, matrices)
//! compared with what the construction derives.

use super::weights::{q, solve_weights, WeightTable, WeightVector};
use super::{
    bottom_equations, case_substitution, diptych_vars, pentagram_list, pentagram_matrix, printed_bottom_equations,
    printed_pentagram, printed_pullback_equations, printed_rally_equations, printed_substitution, pullback_equations,
    rally_equations, top_equations, weight_table, xn, yn, CaseId, DiptychCase,
};
use crate::error::Result;

/// The weight tables as printed, for `[2,2]` and `[4,1]`-even.
pub fn printed_weight_table(case: DiptychCase) -> Option<Vec<(String, WeightVector)>> {
    let k = case.k() as i64;
    let mut rows = Vec::new();
    match case.id() {
        CaseId::TwoTwo => {
            for i in 0..=k {
                rows.push((xn(i as usize), WeightVector::over(2, i - 1, i, k - i - 1, k - i)));
            }
            rows.push((yn(0), WeightVector::over(2, 0, -1, k, k - 1)));
            rows.push((yn(1), WeightVector::over(2, 1, 1, 1, 1)));
            rows.push((yn(2), WeightVector::over(2, k, k + 1, 0, -1)));
        }
        CaseId::FourOneEven => {
            for i in 0..=k {
                rows.push((xn(i as usize), WeightVector::over(4, 2 * i - 1, 4 * i, 2 * k - 2 * i - 1, 4 * (k - i))));
            }
            rows.push((yn(0), WeightVector::new(q(0, 1), q(-1, 1), q(k, 1), q(2 * k + 1, 1))));
            rows.push((yn(1), WeightVector::new(q(1, 4), q(0, 1), q(2 * k + 1, 4), q(k + 1, 1))));
            rows.push((yn(2), WeightVector::over(2, 1, 2, 1, 2)));
            rows.push((yn(3), WeightVector::new(q(2 * k + 1, 4), q(k + 1, 1), q(1, 4), q(0, 1))));
            rows.push((yn(4), WeightVector::new(q(k, 1), q(2 * k + 1, 1), q(0, 1), q(-1, 1))));
        }
        _ => return None,
    }
    Some(rows)
}

/// One place where a printed item differs from the derived one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Deviation {
    pub case: CaseId,
    /// Stable key, e.g. `weight y0` or `rally display 2`.
    pub item: String,
    pub printed: String,
    pub derived: String,
}

/// The deviations the construction is known to find, by case and key.
pub const DOCUMENTED_DEVIATIONS: &[(CaseId, &str)] = &[
    (CaseId::TwoTwo, "weight y0"),
    (CaseId::FourOneEven, "substitution z"),
    (CaseId::FourOneEven, "rally display 2"),
    (CaseId::FourOneEven, "rally display 3"),
    (CaseId::OneFourEven, "printed bottom cross"),
    (CaseId::OneFourEven, "rally display 2"),
    (CaseId::OneFourEven, "rally display 3"),
    (CaseId::OneFourOdd, "substitution z"),
];

fn render(w: Option<WeightVector>) -> String {
    w.map_or_else(|| "undetermined".to_string(), |w| w.to_string())
}

/// Rows where the derived table differs from the printed one.
pub fn weight_deviations(case: DiptychCase, table: &WeightTable) -> Vec<Deviation> {
    let Some(rows) = printed_weight_table(case) else { return vec![] };
    rows.into_iter()
        .filter(|(n, w)| table.get(n) != Some(*w))
        .map(|(n, w)| Deviation {
            case: case.id(),
            item: format!("weight {n}"),
            printed: w.to_string(),
            derived: render(table.get(&n)),
        })
        .collect()
}

/// Every deviation between printed and derived data for one case.
pub fn deviations(case: DiptychCase) -> Result<Vec<Deviation>> {
    let v = diptych_vars(case);
    let id = case.id();
    let table = weight_table(case)?;
    let mut out = weight_deviations(case, &table);

    let derived_z = case_substitution(case).image("z").cloned();
    let printed_z = printed_substitution(case).image("z").cloned();
    if derived_z != printed_z {
        let mut gens = printed_pullback_equations(case)?.polys();
        gens.extend(bottom_equations(case).polys());
        gens.extend(top_equations(case).polys());
        let consistent = solve_weights(&v, &gens).is_ok();
        out.push(Deviation {
            case: id,
            item: "substitution z".into(),
            printed: format!(
                "z -> {}{}",
                printed_z.map(|p| p.to_string()).unwrap_or_default(),
                if consistent { "" } else { " (inhomogeneous)" }
            ),
            derived: format!("z -> {}", derived_z.map(|p| p.to_string()).unwrap_or_default()),
        });
    }

    let pull = pullback_equations(case)?;
    let mut seen = [false; 3];
    for i in 1..case.vk_k() {
        let printed = printed_rally_equations(case, i)?;
        let derived = rally_equations(case, i)?;
        for (j, ((_, p), (_, d))) in printed.iter().zip(&derived).enumerate() {
            if !seen[j] && !pull.contains_up_to_scalar(p) {
                seen[j] = true;
                out.push(Deviation {
                    case: id,
                    item: format!("rally display {}", j + 1),
                    printed: format!("i={i}: {p}"),
                    derived: format!("i={i}: {d}"),
                });
            }
        }
    }

    if let Some(pb) = printed_bottom_equations(case) {
        let bad: Vec<String> =
            pb.generators().iter().filter(|g| !table.is_homogeneous(&g.poly)).map(|g| g.poly.to_string()).collect();
        if !bad.is_empty() {
            out.push(Deviation {
                case: id,
                item: "printed bottom cross".into(),
                printed: bad.join("; "),
                derived: bottom_equations(case).polys().iter().map(|p| p.to_string()).collect::<Vec<_>>().join("; "),
            });
        }
    }

    for p in pentagram_list(case) {
        if let Some(pm) = printed_pentagram(case, p) {
            let dm = pentagram_matrix(case, p)?;
            if !pm.differences(&dm).is_empty() {
                out.push(Deviation {
                    case: id,
                    item: format!("pentagram {p}"),
                    printed: pm.to_string(),
                    derived: dm.to_string(),
                });
            }
        }
    }
    Ok(out)
}
