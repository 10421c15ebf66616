use smallvec::SmallVec;

use super::{GroupSpec, FREE_LETTERS};

/// Canonical element representation; equal elements compare equal.
///
/// Free words store letters as `+(i+1)` for generator `i` and `-(i+1)` for
/// its inverse, always freely reduced. Residues lie in `[0, m)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupElement {
    Abelian(SmallVec<[i64; 2]>),
    Free(SmallVec<[i32; 6]>),
    Cyclic(u64),
    Product(Vec<GroupElement>),
}

impl GroupElement {
    pub fn abelian(coords: &[i64]) -> Self {
        GroupElement::Abelian(coords.iter().copied().collect())
    }

    /// Builds a free word from signed letters, reducing as it goes.
    pub fn free_word(letters: &[i32]) -> Self {
        let mut w: SmallVec<[i32; 6]> = SmallVec::new();
        for &l in letters {
            if w.last() == Some(&-l) {
                w.pop();
            } else {
                w.push(l);
            }
        }
        GroupElement::Free(w)
    }
}

pub(crate) fn letter_name(index: usize) -> char {
    FREE_LETTERS[index] as char
}

pub(super) fn format_element(group: &GroupSpec, x: &GroupElement) -> String {
    match (group, x) {
        (GroupSpec::FreeAbelian(1), GroupElement::Abelian(a)) => a[0].to_string(),
        (GroupSpec::FreeAbelian(_), GroupElement::Abelian(a)) => {
            let parts: Vec<String> = a.iter().map(i64::to_string).collect();
            format!("({})", parts.join(","))
        }
        (GroupSpec::Free(_), GroupElement::Free(w)) => {
            if w.is_empty() {
                return "e".to_string();
            }
            let mut parts = Vec::new();
            let mut i = 0;
            while i < w.len() {
                let mut j = i;
                while j < w.len() && w[j] == w[i] {
                    j += 1;
                }
                let name = letter_name(w[i].unsigned_abs() as usize - 1);
                let exp = (j - i) as i64 * i64::from(w[i].signum());
                if exp == 1 {
                    parts.push(name.to_string());
                } else {
                    parts.push(format!("{name}^{exp}"));
                }
                i = j;
            }
            parts.join(" ")
        }
        (GroupSpec::FiniteCyclic(_), GroupElement::Cyclic(r)) => r.to_string(),
        (GroupSpec::DirectProduct(fs), GroupElement::Product(xs)) if fs.len() == xs.len() => {
            let parts: Vec<String> = fs
                .iter()
                .zip(xs)
                .map(|(f, x)| format_element(f, x))
                .collect();
            format!("[{}]", parts.join(" | "))
        }
        _ => format!("{x:?}"),
    }
}
