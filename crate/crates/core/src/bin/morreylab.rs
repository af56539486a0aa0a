fn main() {
    std::process::exit(morreylab::cli::run(std::env::args_os()));
}
