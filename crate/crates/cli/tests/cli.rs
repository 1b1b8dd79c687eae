use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn treealign(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_treealign"))
        .args(args)
        .output()
        .expect("spawn treealign")
}

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../core/tests/fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn summary_value<'a>(summary: &'a str, key: &str) -> &'a str {
    summary
        .lines()
        .find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix(": ")))
        .unwrap_or_else(|| panic!("no {key} in summary:\n{summary}"))
}

#[test]
fn golden_pair_reports_noun_phrase() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report");
    let run = treealign(&[
        "--left", &fixture("susanne_fragment.txt"),
        "--left-format", "susanne",
        "--right", &fixture("penn_fragment.mrg"),
        "--right-format", "penn",
        "--out", s(&out),
    ]);
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    let strict = fs::read_to_string(out.join("strict.tsv")).unwrap();
    assert!(strict.lines().any(|l| l == "4\t3"), "{strict}");
    for name in [
        "delta.tsv", "mismatches.tsv", "potential.tsv", "unalignable.tsv", "locations.tsv",
        "summary.txt",
    ] {
        assert!(out.join(name).is_file(), "{name} missing");
    }
    let mismatches = fs::read_to_string(out.join("mismatches.tsv")).unwrap();
    assert!(mismatches.contains("say") && mismatches.contains("said"), "{mismatches}");
}

#[test]
fn same_file_on_both_sides_aligns_everything() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = dir.path().join("c.txt");
    fs::write(&corpus, "{ { { the cat } sat } { on { the mat } } }\n{ { x } y }\n").unwrap();
    let run = treealign(&["--left", s(&corpus), "--right", s(&corpus), "--stats-only"]);
    assert!(run.status.success());
    let summary = String::from_utf8(run.stdout).unwrap();
    for side in ["left", "right"] {
        assert_eq!(summary_value(&summary, &format!("{side}.matched_terminal_pct")), "100.0");
        assert_eq!(summary_value(&summary, &format!("{side}.aligned_pct")), "100.0");
        assert_eq!(summary_value(&summary, &format!("{side}.subtree_count")), "7");
    }
    assert_eq!(summary_value(&summary, "strict_pairs"), "7");
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 1, "--stats-only wrote files");
}

#[test]
fn manifest_writes_one_directory_per_pair() {
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("data");
    fs::create_dir(&data).unwrap();
    let mut manifest = String::new();
    for n in 0..5 {
        let (l, r) = (format!("l{n}.txt"), format!("r{n}.txt"));
        fs::write(data.join(&l), format!("{{ {{ a{n} b }} c }}")).unwrap();
        fs::write(data.join(&r), format!("{{ a{n} {{ b c }} }}")).unwrap();
        manifest.push_str(&format!("{l}\t{r}\n"));
    }
    let manifest_path = data.join("pairs.tsv");
    fs::write(&manifest_path, manifest).unwrap();
    let out = dir.path().join("out");
    let run = treealign(&["--manifest", s(&manifest_path), "--out", s(&out), "--jobs", "3"]);
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    let mut names: Vec<String> = fs::read_dir(&out)
        .unwrap()
        .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
        .collect();
    names.sort();
    let expected: Vec<String> = (0..5).map(|n| format!("{:04}_l{n}.txt__r{n}.txt", n + 1)).collect();
    assert_eq!(names, expected);
    for name in &names {
        let summary = fs::read_to_string(out.join(name).join("summary.txt")).unwrap();
        assert_eq!(summary_value(&summary, "strict_pairs"), "1");
        assert_eq!(summary_value(&summary, "potential_alignments"), "0");
    }
}

fn read_tree(dir: &Path) -> Vec<(PathBuf, Vec<u8>)> {
    let mut files: Vec<(PathBuf, Vec<u8>)> = fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let path = e.unwrap().path();
            let bytes = fs::read(&path).unwrap();
            (path.strip_prefix(dir).unwrap().to_path_buf(), bytes)
        })
        .collect();
    files.sort();
    files
}

#[test]
fn reruns_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let mut outputs = Vec::new();
    for run_no in 0..2 {
        let out = dir.path().join(format!("run{run_no}"));
        let run = treealign(&[
            "--left", &fixture("susanne_fragment.txt"),
            "--left-format", "susanne",
            "--right", &fixture("penn_fragment.mrg"),
            "--right-format", "PENN",
            "--out", s(&out),
        ]);
        assert!(run.status.success());
        outputs.push(read_tree(&out));
    }
    assert_eq!(outputs[0], outputs[1]);
    assert_eq!(outputs[0].len(), 7);
}

#[test]
fn comparator_flags_change_delta() {
    let dir = tempfile::tempdir().unwrap();
    let (l, r) = (dir.path().join("l"), dir.path().join("r"));
    fs::write(&l, "{ { The cat } sat down }").unwrap();
    fs::write(&r, "{ { the cat } sat down }").unwrap();
    let summary = |extra: &[&str]| {
        let mut args = vec!["--left", s(&l), "--right", s(&r), "--stats-only"];
        args.extend_from_slice(extra);
        String::from_utf8(treealign(&args).stdout).unwrap()
    };
    assert_eq!(summary_value(&summary(&[]), "mismatches"), "0");
    let strict = summary(&["--no-ignore-case"]);
    assert_eq!(summary_value(&strict, "left.matched_terminal_count"), "3");
    let reenabled = summary(&["--no-ignore-case", "--ignore-case"]);
    assert_eq!(summary_value(&reenabled, "left.matched_terminal_count"), "4");
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("good.txt");
    let bad = dir.path().join("bad.txt");
    fs::write(&good, "{ a b }").unwrap();
    fs::write(&bad, "{ a b } }").unwrap();
    let out = dir.path().join("out");

    assert_eq!(treealign(&["--help"]).status.code(), Some(0));
    assert_eq!(treealign(&["--version"]).status.code(), Some(0));
    assert_eq!(treealign(&[]).status.code(), Some(1));
    assert_eq!(treealign(&["--left", s(&good)]).status.code(), Some(1));
    assert_eq!(
        treealign(&["--left", s(&good), "--right", s(&good), "--left-format", "sgml", "--stats-only"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(treealign(&["--left", s(&good), "--right", s(&good)]).status.code(), Some(1));

    let missing = dir.path().join("nope.txt");
    let run = treealign(&["--left", s(&missing), "--right", s(&good), "--out", s(&out)]);
    assert_eq!(run.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&run.stderr).contains("nope.txt"));

    let run = treealign(&["--left", s(&good), "--right", s(&bad), "--out", s(&out)]);
    assert_eq!(run.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&run.stderr);
    assert!(stderr.contains("bad.txt") && stderr.contains("byte 8"), "{stderr}");
}
