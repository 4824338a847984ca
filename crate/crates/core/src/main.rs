fn main() { std::process::exit(fatsph::cli::main_entry()); }
