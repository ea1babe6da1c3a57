fn main() {
    std::process::exit(formcode::cli::run(std::env::args_os()));
}
