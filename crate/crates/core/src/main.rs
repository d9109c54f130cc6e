fn main() {
    std::process::exit(slicekit::cli::run(std::env::args_os()));
}
