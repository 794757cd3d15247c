use std::collections::HashSet;

use super::Name;

/// Marker separating a user name from its derived copy tag.
pub const RESERVED_MARK: char = '#';

/// The three copies a variable is split into by the parametricity
/// translation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RenameTag {
    One,
    Two,
    Pm,
}

impl RenameTag {
    pub fn suffix(self) -> &'static str {
        match self {
            RenameTag::One => "1",
            RenameTag::Two => "2",
            RenameTag::Pm => "pm",
        }
    }

    pub fn copy(i: u8) -> RenameTag {
        match i {
            1 => RenameTag::One,
            2 => RenameTag::Two,
            _ => panic!("copy index must be 1 or 2, got {i}"),
        }
    }
}

/// `x ↦ x#1`, `x#2`, `x#pm`. Injective, and never produces a name the
/// parser accepts in ordinary input.
pub fn rename(x: &str, tag: RenameTag) -> Name {
    format!("{x}{RESERVED_MARK}{}", tag.suffix())
}

pub fn is_reserved(x: &str) -> bool {
    x.contains(RESERVED_MARK)
}

/// First of `base`, `base'`, `base''`, … not rejected by `used`.
pub(crate) fn variant(base: &str, used: impl Fn(&str) -> bool) -> Name {
    let mut candidate = base.to_string();
    while used(&candidate) {
        candidate.push('\'');
    }
    candidate
}

/// Supply of names distinct from a seeded set and from each other.
#[derive(Clone, Debug, Default)]
pub struct Fresh {
    used: HashSet<Name>,
}

impl Fresh {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn avoiding<I, S>(names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<Name>,
    {
        Fresh {
            used: names.into_iter().map(Into::into).collect(),
        }
    }

    pub fn reserve(&mut self, name: impl Into<Name>) {
        self.used.insert(name.into());
    }

    pub fn reserve_all<I, S>(&mut self, names: I)
    where
        I: IntoIterator<Item = S>,
        S: Into<Name>,
    {
        self.used.extend(names.into_iter().map(Into::into));
    }

    pub fn is_used(&self, name: &str) -> bool {
        self.used.contains(name)
    }

    /// `base` itself if unused, otherwise `base_1`, `base_2`, …
    pub fn name(&mut self, base: &str) -> Name {
        let mut candidate = base.to_string();
        let mut k = 0usize;
        while self.used.contains(&candidate) {
            k += 1;
            candidate = format!("{base}_{k}");
        }
        self.used.insert(candidate.clone());
        candidate
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rename_tags() {
        assert_eq!(rename("x", RenameTag::One), "x#1");
        assert_eq!(rename("x", RenameTag::Two), "x#2");
        assert_eq!(rename("x", RenameTag::Pm), "x#pm");
        assert!(is_reserved(&rename("f", RenameTag::Pm)));
        assert!(!is_reserved("f"));
    }

    #[test]
    fn fresh_supply_never_repeats() {
        let mut fresh = Fresh::avoiding(["x", "x_1"]);
        assert_eq!(fresh.name("x"), "x_2");
        assert_eq!(fresh.name("x"), "x_3");
        assert_eq!(fresh.name("y"), "y");
        assert_eq!(fresh.name("y"), "y_1");
    }

    #[test]
    fn primed_variants() {
        assert_eq!(variant("y", |n| n == "y"), "y'");
        assert_eq!(variant("y", |n| n == "y" || n == "y'"), "y''");
    }
}
