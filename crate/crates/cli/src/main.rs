fn main() { std::process::exit(foreal_cli::run(std::env::args().collect())); }
