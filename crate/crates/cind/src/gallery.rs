//! Named example scripts shipped with the binary.

pub const FIXTURES: [(&str, &str); 5] = [
    ("nat_as_lists", include_str!("../gallery/nat_as_lists.cind")),
    ("truth_monoid", include_str!("../gallery/truth_monoid.cind")),
    ("pulling_back_lists", include_str!("../gallery/pulling_back_lists.cind")),
    ("tree_pruning", include_str!("../gallery/tree_pruning.cind")),
    ("intro_examples", include_str!("../gallery/intro_examples.cind")),
];

pub fn get(name: &str) -> Option<&'static str> {
    FIXTURES.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

pub fn names() -> impl Iterator<Item = &'static str> {
    FIXTURES.iter().map(|(n, _)| *n)
}
