fn main() {
    std::process::exit(siltkit::cli::run(std::env::args_os()));
}
