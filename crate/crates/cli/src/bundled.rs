//! Scenario files shipped with the binary.

pub struct Bundled {
    pub name: &'static str,
    pub file: &'static str,
    pub text: &'static str,
}

macro_rules! bundled {
    ($($name:literal),* $(,)?) => {
        &[$(Bundled {
            name: $name,
            file: concat!($name, ".json"),
            text: include_str!(concat!("../scenarios/", $name, ".json")),
        }),*]
    };
}

pub const SCENARIOS: &[Bundled] = bundled!(
    "example_1_1",
    "s2_omnibus",
    "csp_cyclic4",
    "s2_csp",
    "gf3_scalar_springer",
    "z4_nonregular_remark",
    "g168",
);

/// Alternative names accepted by [`find`].
const ALIASES: &[(&str, &str)] = &[("cyclic4_csp", "csp_cyclic4")];

/// Looks up a bundled scenario by name, with or without the `.json` suffix.
pub fn find(name: &str) -> Option<&'static Bundled> {
    let stem = name.strip_suffix(".json").unwrap_or(name);
    let stem = ALIASES.iter().find(|(alias, _)| *alias == stem).map_or(stem, |(_, target)| target);
    SCENARIOS.iter().find(|b| b.name == stem)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Scenario;

    #[test]
    fn every_bundled_scenario_parses_under_its_own_name() {
        for b in SCENARIOS {
            assert_eq!(Scenario::parse(b.text).unwrap().name, b.name);
        }
    }

    #[test]
    fn lookup_accepts_suffix_and_alias() {
        assert_eq!(find("example_1_1.json").unwrap().name, "example_1_1");
        assert_eq!(find("cyclic4_csp").unwrap().name, "csp_cyclic4");
        assert!(find("nope").is_none());
    }
}
