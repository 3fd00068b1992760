//! Scenarios compiled into the binary.

pub const SCENARIOS: &[(&str, &str)] = &[
    ("fig1", include_str!("../scenarios/fig1.json")),
    ("fig3", include_str!("../scenarios/fig3.json")),
    ("fig4", include_str!("../scenarios/fig4.json")),
];

pub fn get(name: &str) -> Option<&'static str> {
    SCENARIOS.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}
