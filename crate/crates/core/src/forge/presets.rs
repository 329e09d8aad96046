use super::config::ForgeConfig;
use super::ForgeError;

const PRESETS: &[(&str, &str)] = &[
    ("vocab-0", include_str!("../../presets/vocab-0.toml")),
    ("vocab-10", include_str!("../../presets/vocab-10.toml")),
    ("vocab-50", include_str!("../../presets/vocab-50.toml")),
    ("vocab-100", include_str!("../../presets/vocab-100.toml")),
    ("vocab-150", include_str!("../../presets/vocab-150.toml")),
    ("kshot-1", include_str!("../../presets/kshot-1.toml")),
    ("kshot-5", include_str!("../../presets/kshot-5.toml")),
    ("kshot-10", include_str!("../../presets/kshot-10.toml")),
    ("kshot-50", include_str!("../../presets/kshot-50.toml")),
    ("types-all", include_str!("../../presets/types-all.toml")),
    ("types-no-cautiously", include_str!("../../presets/types-no-cautiously.toml")),
    ("types-only-cautiously", include_str!("../../presets/types-only-cautiously.toml")),
    ("types-one-cautiously", include_str!("../../presets/types-one-cautiously.toml")),
    ("types-no-extra", include_str!("../../presets/types-no-extra.toml")),
];

/// Names of the bundled experiment configurations.
pub fn preset_names() -> impl Iterator<Item = &'static str> {
    PRESETS.iter().map(|(n, _)| *n)
}

/// A bundled experiment configuration by name.
pub fn preset(name: &str) -> Result<ForgeConfig, ForgeError> {
    let (_, text) = PRESETS
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| ForgeError::Config(format!("unknown preset `{name}`")))?;
    ForgeConfig::from_toml(text)
}
