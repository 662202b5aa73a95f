//! Distinguished parabolic labelings and Bala–Carter label strings.

use crate::rootdata::{RootSystem, SimpleType, SubComponent};

/// A distinguished `{0,2}`-labeling of a simple type with its decoration
/// (`""` for the regular labeling, otherwise `"(a1)"`, `"(b4)"`, …).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistinguishedLabeling {
    pub labels: Vec<i64>,
    pub decoration: String,
    pub orbit_dim: usize,
}

/// All labelings with `dim 𝔩(0) = dim 𝔩(2)`.
///
/// Decorations: the index is the number of zero labels; when several
/// labelings share that number they get `a`, `b`, … by decreasing orbit
/// dimension.
pub fn distinguished_labelings(t: SimpleType) -> Vec<DistinguishedLabeling> {
    let sys = RootSystem::new(&[t]).expect("valid simple type");
    let r = t.rank;
    let np = sys.positive_count();
    let mut found: Vec<(usize, DistinguishedLabeling)> = Vec::new();
    for mask in 0u32..(1 << r) {
        let labels: Vec<i64> = (0..r).map(|i| if mask >> i & 1 == 1 { 2 } else { 0 }).collect();
        let mut deg0 = 0;
        let mut deg2 = 0;
        for root in &sys.roots()[..np] {
            match root.coords.iter().zip(&labels).map(|(c, l)| c * l).sum::<i64>() {
                0 => deg0 += 1,
                2 => deg2 += 1,
                _ => {}
            }
        }
        let dim0 = r + 2 * deg0;
        if dim0 == deg2 {
            let zeros = labels.iter().filter(|&&l| l == 0).count();
            found.push((
                zeros,
                DistinguishedLabeling {
                    labels,
                    decoration: String::new(),
                    orbit_dim: sys.dimension() - dim0,
                },
            ));
        }
    }
    found.sort_by(|a, b| a.0.cmp(&b.0).then(b.1.orbit_dim.cmp(&a.1.orbit_dim)).then(a.1.labels.cmp(&b.1.labels)));
    let mut out = Vec::with_capacity(found.len());
    let mut k = 0;
    while k < found.len() {
        let zeros = found[k].0;
        let group: Vec<_> = found[k..].iter().take_while(|(z, _)| *z == zeros).cloned().collect();
        k += group.len();
        for (idx, (_, mut d)) in group.into_iter().enumerate() {
            if zeros > 0 {
                d.decoration = format!("({}{zeros})", (b'a' + idx as u8) as char);
            }
            out.push(d);
        }
    }
    out
}

/// One simple factor of a Bala–Carter label.
#[derive(Clone, Debug)]
pub(crate) struct LabelPart {
    pub rank: usize,
    pub short: bool,
    pub text: String,
}

impl LabelPart {
    pub fn new(comp: &SubComponent, decoration: &str) -> Self {
        Self {
            rank: comp.simple_type.rank,
            short: comp.short,
            text: format!("{}{decoration}", comp.label()),
        }
    }
}

/// Factors sorted by rank (descending), long before short; equal factors
/// merged as `2A2`; joined with `+`, except that factors next to a `~`
/// factor are written without separator (`A1~A1`, `~A2A1`). The empty
/// label is `1`.
pub(crate) fn bala_carter_label(mut parts: Vec<LabelPart>) -> String {
    if parts.is_empty() {
        return "1".to_string();
    }
    parts.sort_by(|a, b| b.rank.cmp(&a.rank).then(a.short.cmp(&b.short)).then(a.text.cmp(&b.text)));
    let mut grouped: Vec<String> = Vec::new();
    let mut i = 0;
    while i < parts.len() {
        let n = parts[i..].iter().take_while(|p| p.text == parts[i].text).count();
        grouped.push(if n > 1 {
            format!("{n}{}", parts[i].text)
        } else {
            parts[i].text.clone()
        });
        i += n;
    }
    let mut out = grouped[0].clone();
    for w in grouped.windows(2) {
        if !w[0].contains('~') && !w[1].contains('~') {
            out.push('+');
        }
        out.push_str(&w[1]);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::Family;

    fn decorations(f: Family, r: usize) -> Vec<(Vec<i64>, String)> {
        distinguished_labelings(SimpleType::new(f, r).unwrap())
            .into_iter()
            .map(|d| (d.labels, d.decoration))
            .collect()
    }

    #[test]
    fn type_a_has_only_the_regular_labeling() {
        for r in 1..=5 {
            assert_eq!(decorations(Family::A, r), vec![(vec![2; r], String::new())]);
        }
    }

    #[test]
    fn exceptional_counts() {
        // Distinguished orbits: G2 2, F4 4, E6 3.
        assert_eq!(decorations(Family::G, 2).len(), 2);
        assert_eq!(decorations(Family::F, 4).len(), 4);
        let e6: Vec<String> = decorations(Family::E, 6).into_iter().map(|d| d.1).collect();
        assert_eq!(e6, vec!["", "(a1)", "(a3)"]);
        let f4: Vec<String> = decorations(Family::F, 4).into_iter().map(|d| d.1).collect();
        assert_eq!(f4, vec!["", "(a1)", "(a2)", "(a3)"]);
    }

    #[test]
    fn e8_ties_get_letters() {
        let e8: Vec<String> = decorations(Family::E, 8).into_iter().map(|d| d.1).collect();
        assert_eq!(e8.len(), 11);
        assert!(e8.contains(&"(b4)".to_string()));
        assert!(e8.contains(&"(b6)".to_string()));
    }

    fn part(rank: usize, short: bool, text: &str) -> LabelPart {
        LabelPart {
            rank,
            short,
            text: text.to_string(),
        }
    }

    #[test]
    fn label_formatting() {
        assert_eq!(bala_carter_label(vec![]), "1");
        assert_eq!(bala_carter_label(vec![part(1, true, "~A1"), part(1, false, "A1")]), "A1~A1");
        assert_eq!(bala_carter_label(vec![part(1, false, "A1"), part(2, true, "~A2")]), "~A2A1");
        assert_eq!(
            bala_carter_label(vec![part(1, false, "A1"), part(2, false, "A2"), part(1, false, "A1")]),
            "A2+2A1"
        );
        assert_eq!(bala_carter_label(vec![part(2, false, "A2"), part(2, false, "A2")]), "2A2");
    }
}
