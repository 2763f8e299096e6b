// The `fdt` command line, driven in-process on the bundled fixture files.

use finitary::cli::run;

fn fdt(args: &[&str]) -> String {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/");
    let argv: Vec<String> = std::iter::once("fdt".to_string())
        .chain(args.iter().map(|a| if a.contains('.') && !a.starts_with('-') { format!("{dir}{a}") } else { a.to_string() }))
        .collect();
    let out = run(argv);
    println!("$ fdt {}\n{}{}[exit {}]", args.join(" "), out.stdout, out.stderr, out.code);
    out.stdout
}

pub fn run_example() {
    assert_eq!(fdt(&["lub", "intervals.fb", "(2,6)", "(4,8)"]), "(4,6)\n");
    assert_eq!(fdt(&["lub", "intervals.fb"]), "(0,12)\n");
    fdt(&["lub", "intervals.fb", "(2,6)", "(7,12)"]);
    fdt(&["ideal", "strings.fb", "01"]);
    fdt(&["check", "diamond.fm"]);
    fdt(&["apply", "diamond.fm", "--map", "flip", "l"]);
    fdt(&["compose", "diamond.fm", "flip", "lift"]);
    fdt(&["fix", "chain.fm", "--fuel", "2"]);
    fdt(&["eval", "arith.ft", "--arg", "k=7"]);
    fdt(&["classify", "diamond.fm", "--map", "lift"]);
    fdt(&["sub", "diamond.fm", "--map", "lift"]);
    fdt(&["iso", "iso.fb", "hook", "vee"]);
    fdt(&["construct", "sum", "hook.fb", "hook", "hook"]);
    let out = fdt(&["embed", "hook.fb", "--order", "bot,b,c,a"]);
    assert_eq!(out.lines().last(), Some("a => ((D,T),T)"));
    fdt(&["check", "bad.fm"]);
}

#[allow(dead_code)]
fn main() {
    run_example();
}
