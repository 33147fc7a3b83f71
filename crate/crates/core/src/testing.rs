//! Proptest strategies producing valid domain values.
//!
//! Text fields avoid column-0 `# ` lines, which the file format cannot carry.

use proptest::collection::{btree_set, vec};
use proptest::prelude::*;

use crate::model::{NetworkId, Problem, Reduction, Slug, Tag};

pub fn slug() -> impl Strategy<Value = Slug> {
    "[a-z0-9]{1,6}(-[a-z0-9]{1,6}){0,3}".prop_map(|s| Slug::new(s).expect("kebab"))
}

pub fn network_id() -> impl Strategy<Value = NetworkId> {
    "[a-z]{1,8}(-[a-z0-9]{1,4}){0,1}".prop_map(|s| NetworkId::new(s).expect("kebab"))
}

pub fn tag() -> impl Strategy<Value = Tag> {
    "[a-z0-9]{1,8}(-[a-z0-9]{1,5}){0,2}".prop_map(|s| Tag::new(s).expect("kebab"))
}

/// A trimmed single line that is never read back as a heading.
pub fn display_line() -> impl Strategy<Value = String> {
    "[A-Za-z0-9#$()\\[\\]{}'.,:;!?+*/=<>|&%-]{1,3}([ \\t][A-Za-z0-9#$()'.,:;=+-\\\\]{1,12}){0,4}"
        .prop_filter("heading", |s| !s.starts_with("# "))
}

/// Multi-line Markdown-with-TeX text, normalized like the reader normalizes it.
pub fn text_block() -> impl Strategy<Value = String> {
    let line = prop_oneof![
        Just(String::new()),
        Just("   ".to_string()),
        "[ \\t]{0,3}[A-Za-z0-9$\\\\{}()^_=,.;:!?*`>|-]{1,10}( [A-Za-z0-9$\\\\{}()^_=,.-]{1,10}){0,6}[ \\t]{0,2}",
        "##{1,3} [A-Za-z ]{1,20}",
        "#[A-Za-z]{1,10}",
        "\\$\\$[a-z+=^ ]{1,20}\\$\\$",
        "\\* [a-z ]{1,20}",
    ];
    vec(line, 0..8).prop_map(|lines| crate::model::normalize_block(&lines.join("\n")))
}

pub fn problem() -> impl Strategy<Value = Problem> {
    (
        slug(),
        network_id(),
        display_line(),
        display_line(),
        vec(display_line(), 0..4),
        text_block(),
        btree_set(tag(), 0..4),
        text_block(),
    )
        .prop_map(|(slug, net, name, abbr, alts, desc, tags, refs)| {
            let mut unique: Vec<String> = Vec::new();
            for a in alts {
                if a != name && !unique.contains(&a) {
                    unique.push(a);
                }
            }
            Problem::new(slug, net, &name, &abbr)
                .and_then(|p| p.with_alternative_names(unique))
                .and_then(|p| p.with_description(&desc))
                .and_then(|p| p.with_references(&refs))
                .map(|p| p.with_completeness(tags))
                .expect("generated problem is valid")
        })
}

pub fn reduction() -> impl Strategy<Value = Reduction> {
    (
        slug(),
        network_id(),
        slug(),
        slug(),
        text_block(),
        btree_set(tag(), 0..4),
        text_block(),
    )
        .prop_filter("self loop", |(_, _, from, to, ..)| from != to)
        .prop_map(|(slug, net, from, to, desc, tags, refs)| {
            Reduction::new(slug, net, from, to)
                .and_then(|r| r.with_description(&desc))
                .and_then(|r| r.with_references(&refs))
                .map(|r| r.with_properties(tags))
                .expect("generated reduction is valid")
        })
}
