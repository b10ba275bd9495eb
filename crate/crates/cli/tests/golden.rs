mod readme;

#[test]
fn readme_examples_are_byte_identical() {
    let examples = readme::examples();
    assert!(
        examples.len() >= 10,
        "only {} examples found",
        examples.len()
    );
    let failures = readme::mismatches();
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}
