fn main() {
    std::process::exit(counterpoint::cli::run(std::env::args_os()));
}
