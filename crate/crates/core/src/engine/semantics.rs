//! Labelling semantics over a directed attack graph on `0..n`.

use serde::{Deserialize, Serialize};

use super::EngineError;

/// Default bound on the number of arguments for preferred semantics.
pub const PREFERRED_CAP: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Label {
    #[serde(rename = "IN")]
    In,
    #[serde(rename = "OUT")]
    Out,
    #[serde(rename = "UNDEC")]
    Undec,
}

impl Label {
    pub fn as_str(self) -> &'static str {
        match self {
            Label::In => "IN",
            Label::Out => "OUT",
            Label::Undec => "UNDEC",
        }
    }
}

fn attackers_of(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut att = vec![Vec::new(); n];
    for &(a, b) in edges {
        att[b].push(a);
    }
    att
}

/// Least fixpoint: label IN every argument whose attackers are all OUT, then
/// OUT every argument with an IN attacker, until nothing changes.
pub fn grounded(n: usize, edges: &[(usize, usize)]) -> Vec<Label> {
    let att = attackers_of(n, edges);
    let mut label: Vec<Option<Label>> = vec![None; n];
    loop {
        let mut changed = false;
        for x in 0..n {
            if label[x].is_none() && att[x].iter().all(|&a| label[a] == Some(Label::Out)) {
                label[x] = Some(Label::In);
                changed = true;
            }
        }
        for x in 0..n {
            if label[x].is_none() && att[x].iter().any(|&a| label[a] == Some(Label::In)) {
                label[x] = Some(Label::Out);
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    label.into_iter().map(|l| l.unwrap_or(Label::Undec)).collect()
}

/// All preferred labellings: maximal admissible sets, found by enumerating
/// every subset of arguments. Refuses graphs larger than `cap`.
pub fn preferred(n: usize, edges: &[(usize, usize)], cap: usize) -> Result<Vec<Vec<Label>>, EngineError> {
    if n > cap || n >= 64 {
        return Err(EngineError::CapExceeded { arguments: n, cap });
    }
    let mut attackers = vec![0u64; n];
    let mut targets = vec![0u64; n];
    for &(a, b) in edges {
        attackers[b] |= 1 << a;
        targets[a] |= 1 << b;
    }
    let members = |s: u64| (0..n).filter(move |i| s & (1 << i) != 0);
    let mut admissible = Vec::new();
    for s in 0u64..(1u64 << n) {
        let attacked: u64 = members(s).fold(0, |acc, i| acc | targets[i]);
        if attacked & s != 0 {
            continue;
        }
        if members(s).all(|i| attackers[i] & !attacked == 0) {
            admissible.push(s);
        }
    }
    let maximal: Vec<u64> = admissible
        .iter()
        .copied()
        .filter(|&s| !admissible.iter().any(|&t| t != s && t & s == s))
        .collect();
    Ok(maximal
        .into_iter()
        .map(|s| {
            let attacked: u64 = members(s).fold(0, |acc, i| acc | targets[i]);
            (0..n)
                .map(|i| {
                    if s & (1 << i) != 0 {
                        Label::In
                    } else if attacked & (1 << i) != 0 {
                        Label::Out
                    } else {
                        Label::Undec
                    }
                })
                .collect()
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn unattacked_is_in() {
        assert_eq!(grounded(1, &[]), vec![Label::In]);
    }

    #[test]
    fn attack_defeats() {
        assert_eq!(grounded(2, &[(0, 1)]), vec![Label::In, Label::Out]);
    }

    #[test]
    fn mutual_attack_is_undecided() {
        assert_eq!(grounded(2, &[(0, 1), (1, 0)]), vec![Label::Undec, Label::Undec]);
    }

    #[test]
    fn reinstatement() {
        assert_eq!(grounded(3, &[(0, 1), (1, 2)]), vec![Label::In, Label::Out, Label::In]);
    }

    #[test]
    fn self_attack_is_undecided() {
        assert_eq!(grounded(1, &[(0, 0)]), vec![Label::Undec]);
    }

    #[test]
    fn mutual_attack_has_two_preferred() {
        let mut got = preferred(2, &[(0, 1), (1, 0)], PREFERRED_CAP).unwrap();
        got.sort();
        assert_eq!(got, vec![vec![Label::In, Label::Out], vec![Label::Out, Label::In]]);
    }

    #[test]
    fn no_attacks_one_preferred() {
        assert_eq!(preferred(4, &[], PREFERRED_CAP).unwrap(), vec![vec![Label::In; 4]]);
    }

    #[test]
    fn cap_is_enforced() {
        assert_eq!(
            preferred(21, &[], PREFERRED_CAP),
            Err(EngineError::CapExceeded { arguments: 21, cap: 20 })
        );
    }

    fn graph() -> impl Strategy<Value = (usize, Vec<(usize, usize)>)> {
        (1usize..12).prop_flat_map(|n| (Just(n), prop::collection::vec((0..n, 0..n), 0..n * 3)))
    }

    proptest! {
        #[test]
        fn grounded_satisfies_labelling_laws((n, edges) in graph()) {
            let l = grounded(n, &edges);
            let att = attackers_of(n, &edges);
            for x in 0..n {
                let all_out = att[x].iter().all(|&a| l[a] == Label::Out);
                let some_in = att[x].iter().any(|&a| l[a] == Label::In);
                prop_assert_eq!(l[x] == Label::In, all_out);
                prop_assert_eq!(l[x] == Label::Out, some_in);
            }
        }

        #[test]
        fn grounded_in_is_inside_every_preferred((n, edges) in graph()) {
            let g = grounded(n, &edges);
            for p in preferred(n, &edges, PREFERRED_CAP).unwrap() {
                for x in 0..n {
                    if g[x] == Label::In {
                        prop_assert_eq!(p[x], Label::In);
                    }
                }
            }
        }
    }
}
