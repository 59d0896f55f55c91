//! Golden-file corpus: every file parses, validates, and reproduces its
//! own bytes under canonical printing; mutated copies fail with a
//! position pointing at the mutation.

use qcp_core::dsl::{parse, print, validate};

fn corpus_dir() -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("corpus")
}

fn corpus_files() -> Vec<(String, String)> {
    let mut files: Vec<(String, String)> = std::fs::read_dir(corpus_dir())
        .expect("corpus directory")
        .map(|entry| {
            let path = entry.expect("dir entry").path();
            let name = path.file_name().unwrap().to_string_lossy().into_owned();
            let text = std::fs::read_to_string(&path).expect("readable corpus file");
            (name, text)
        })
        .collect();
    files.sort();
    files
}

#[test]
fn corpus_has_at_least_ten_files() {
    assert!(corpus_files().len() >= 10);
}

#[test]
fn corpus_round_trips_byte_identically() {
    for (name, text) in corpus_files() {
        let ast = parse(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
        let printed = print(&ast);
        assert_eq!(printed, text, "{name} is not in canonical form");
        let reparsed = parse(&printed).unwrap_or_else(|e| panic!("{name} reparse: {e}"));
        assert_eq!(reparsed, ast, "{name} round trip changed the tree");
    }
}

#[test]
fn corpus_validates() {
    for (name, text) in corpus_files() {
        let ast = parse(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
        validate(&ast).unwrap_or_else(|e| panic!("{name}: {e}"));
    }
}

/// `(file, needle, replacement, offset)`: the parse error must land on
/// the first occurrence of `needle`, `offset` characters in (0 when the
/// mutilated token itself is the offender, more when a later token
/// inside the needle is).
const MUTATIONS: &[(&str, &str, &str, usize)] = &[
    ("superdense.qcp", "protocol", "protocl", 0),
    ("superdense.qcp", "send", "snd", 0),
    ("superdense.qcp", "outputs", "output", 0),
    ("empty.qcp", "epr", "eppr", 0),
    ("skewed.qcp", "schmidt", "schmid", 0),
    ("conditional.qcp", "if", "iff", 0),
    ("matgate.qcp", "mat 1", "mat x", 4),
    ("whole_reg.qcp", "apply H", "apply Q", 6),
    ("phases.qcp", "n 0;", "n zero;", 2),
    ("threeround.qcp", "reg a[1]", "reg a(1)", 5),
];

fn position_of(text: &str, needle: &str, offset_in_needle: usize) -> (usize, usize) {
    let at = text.find(needle).expect("needle present") + offset_in_needle;
    let mut line = 1;
    let mut column = 1;
    for c in text[..at].chars() {
        if c == '\n' {
            line += 1;
            column = 1;
        } else {
            column += 1;
        }
    }
    (line, column)
}

#[test]
fn mutated_corpus_fails_at_the_mutation() {
    assert!(MUTATIONS.len() >= 10);
    for (file, needle, replacement, offset) in MUTATIONS {
        let path = corpus_dir().join(file);
        let text = std::fs::read_to_string(&path).expect("readable corpus file");
        let mutated = text.replacen(needle, replacement, 1);
        assert_ne!(mutated, text, "{file}: needle \"{needle}\" missing");
        let err = match parse(&mutated) {
            Err(e) => e,
            Ok(_) => panic!("{file}: mutation \"{needle}\" -> \"{replacement}\" still parses"),
        };
        let expected = position_of(&text, needle, *offset);
        assert_eq!(
            (err.line, err.column),
            expected,
            "{file}: \"{replacement}\" reported at {}:{} (message: {})",
            err.line,
            err.column,
            err.message
        );
    }
}
