//! Per-module size caps. `SNSPEC_MAX_N` replaces every default, clamped to
//! the module's hard limit.

use snspec_core::{birkhoff, characters, extremal, group_algebra};

/// Default cap for commands that only print tables or spectra.
pub const DEFAULT_TABLE_N: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    /// chartab, spectrum.
    pub table: usize,
    /// build-y, probe, hoffman.
    pub engine: usize,
    pub group: usize,
    pub peel: usize,
    pub tuple: usize,
    pub search: usize,
    pub certificate: usize,
}

impl Caps {
    pub fn defaults() -> Self {
        Caps {
            table: DEFAULT_TABLE_N,
            engine: characters::MAX_TABLE_N,
            group: group_algebra::MAX_GROUP_N,
            peel: birkhoff::MAX_PEEL_N,
            tuple: birkhoff::MAX_TUPLE_N,
            search: extremal::MAX_SEARCH_N + 1,
            certificate: extremal::MAX_CERTIFICATE_N,
        }
    }

    pub fn with_override(value: usize) -> Self {
        let hard = Caps::defaults();
        Caps {
            table: value.min(characters::MAX_TABLE_N),
            engine: value.min(hard.engine),
            group: value.min(hard.group),
            peel: value.min(hard.peel),
            tuple: value.min(hard.tuple),
            search: value.min(hard.search),
            certificate: value.min(hard.certificate),
        }
    }

    pub fn from_env_value(raw: Option<&str>) -> Result<Self, String> {
        match raw {
            None => Ok(Caps::defaults()),
            Some(s) => s
                .trim()
                .parse::<usize>()
                .map(Caps::with_override)
                .map_err(|_| format!("SNSPEC_MAX_N must be a nonnegative integer, got {s:?}")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn override_is_clamped() {
        let c = Caps::from_env_value(Some("100")).unwrap();
        assert_eq!(c.table, characters::MAX_TABLE_N);
        assert_eq!(c.group, group_algebra::MAX_GROUP_N);
        assert_eq!(c.peel, birkhoff::MAX_PEEL_N);
        let c = Caps::from_env_value(Some("4")).unwrap();
        assert_eq!((c.table, c.engine, c.group), (4, 4, 4));
        assert_eq!(Caps::from_env_value(None).unwrap().table, DEFAULT_TABLE_N);
        assert!(Caps::from_env_value(Some("many")).is_err());
    }
}
