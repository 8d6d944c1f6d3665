fn main() {
    std::process::exit(gapvec::run(std::env::args_os()));
}
