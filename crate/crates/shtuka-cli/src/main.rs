fn main() {
    let (code, text) = shtuka_cli::run(std::env::args());
    if !text.is_empty() {
        println!("{text}");
    }
    std::process::exit(code);
}
